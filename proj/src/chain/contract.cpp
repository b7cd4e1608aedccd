/*
   Copyright 2026 The NFP Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <nfp/chain/contract.hpp>

#include <nfp/crypto/hash.hpp>

namespace nfp::chain {

const Address& ContractContext::sender() const {
    if (!env_.sender) throw unauthorized();
    return *env_.sender;
}

std::optional<Bytes> ContractContext::get(std::string_view key) {
    gas_.consume(params_.read_cost_flat);
    auto value = backend_.storage_get(env_.contract, key);
    if (value) gas_.consume(params_.read_cost_per_byte * value->size());
    return value;
}

void ContractContext::require_writable() const {
    if (read_only_) throw ContractError("read_only", "storage writes are not allowed in queries");
}

void ContractContext::set(std::string_view key, ByteView value) {
    require_writable();
    gas_.consume(params_.write_cost_flat + params_.write_cost_per_byte * (key.size() + value.size()));
    backend_.storage_set(env_.contract, key, value);
}

void ContractContext::remove(std::string_view key) {
    require_writable();
    gas_.consume(params_.write_cost_flat);
    backend_.storage_remove(env_.contract, key);
}

std::optional<Json> ContractContext::get_json(std::string_view key) {
    auto raw = get(key);
    if (!raw) return std::nullopt;
    return Json::parse(raw->begin(), raw->end());
}

void ContractContext::set_json(std::string_view key, const Json& value) { set(key, as_bytes(canonical(value))); }

void ContractContext::send(const Address& to, Uscrt amount) {
    require_writable();
    backend_.transfer(env_.contract, to, amount);
}

Uscrt ContractContext::balance() { return backend_.balance_of(env_.contract); }

Hash256 ContractContext::entropy() const { return crypto::sha256(concat({env_.block_hash, env_.tx_hash, seed_})); }

}  // namespace nfp::chain
