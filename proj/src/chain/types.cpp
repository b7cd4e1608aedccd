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

#include <nfp/chain/types.hpp>

namespace nfp::chain {

void to_json(Json& j, const GasParams& p) {
    j = Json{{"block_gas_limit", p.block_gas_limit},     {"write_cost_per_byte", p.write_cost_per_byte},
             {"write_cost_flat", p.write_cost_flat},     {"read_cost_per_byte", p.read_cost_per_byte},
             {"read_cost_flat", p.read_cost_flat},       {"base_tx_cost", p.base_tx_cost},
             {"query_gas_limit", p.query_gas_limit}};
}

void from_json(const Json& j, GasParams& p) {
    const GasParams d;
    p.block_gas_limit = j.value("block_gas_limit", d.block_gas_limit);
    p.write_cost_per_byte = j.value("write_cost_per_byte", d.write_cost_per_byte);
    p.write_cost_flat = j.value("write_cost_flat", d.write_cost_flat);
    p.read_cost_per_byte = j.value("read_cost_per_byte", d.read_cost_per_byte);
    p.read_cost_flat = j.value("read_cost_flat", d.read_cost_flat);
    p.base_tx_cost = j.value("base_tx_cost", d.base_tx_cost);
    p.query_gas_limit = j.value("query_gas_limit", d.query_gas_limit);
}

void to_json(Json& j, const ChainConfig& c) {
    Json accounts = Json::array();
    for (const auto& a : c.accounts) accounts.push_back({{"address", a.address.str()}, {"balance", a.balance}});
    j = Json{{"chain_id", c.chain_id}, {"gas", c.gas}, {"accounts", accounts}, {"seed", to_hex(c.seed)}};
}

void from_json(const Json& j, ChainConfig& c) {
    c.chain_id = j.value("chain_id", std::string{"nfp-sim-1"});
    if (j.contains("gas")) c.gas = j.at("gas").get<GasParams>();
    c.accounts.clear();
    for (const auto& a : j.value("accounts", Json::array())) {
        c.accounts.push_back({Address::parse(a.at("address").get<std::string>()), a.at("balance").get<Uscrt>()});
    }
    c.seed = j.contains("seed") ? fixed_from_hex<32>(j.at("seed").get<std::string>()) : Hash256{};
}

void to_json(Json& j, const BlockHeader& b) {
    Json txs = Json::array();
    for (const auto& h : b.tx_hashes) txs.push_back(to_hex(h));
    j = Json{{"height", b.height}, {"hash", to_hex(b.hash)}, {"prev_hash", to_hex(b.prev_hash)}, {"txs", txs}, {"gas_used", b.gas_used}};
}

void from_json(const Json& j, BlockHeader& b) {
    b.height = j.at("height");
    b.hash = fixed_from_hex<32>(j.at("hash").get<std::string>());
    b.prev_hash = fixed_from_hex<32>(j.at("prev_hash").get<std::string>());
    b.tx_hashes.clear();
    for (const auto& h : j.at("txs")) b.tx_hashes.push_back(fixed_from_hex<32>(h.get<std::string>()));
    b.gas_used = j.at("gas_used");
}

std::string canonical(const Json& j) { return j.dump(); }

Address address_field(const Json& j, const char* key) { return Address::parse(j.at(key).get<std::string>()); }

}  // namespace nfp::chain
