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

#include <nfp/chain/store.hpp>

#include <algorithm>

#include <nfp/crypto/hash.hpp>

namespace nfp::chain {

std::size_t SealedStore::total_bytes() const {
    std::size_t total = 0;
    for (const auto& [addr, entries] : contracts) {
        for (const auto& [key, value] : entries) total += key.size() + value.size();
    }
    return total;
}

SealedKey seal_key(const StateKey& state_key, std::string_view key) { return crypto::hmac_sha256(state_key, as_bytes(key)); }

Bytes seal_value(const StateKey& state_key, const SealedKey& sealed_key, ByteView value, const crypto::AeadNonce& nonce) {
    Bytes out(nonce.begin(), nonce.end());
    append(out, crypto::aead_seal(state_key, nonce, value, sealed_key));
    return out;
}

Bytes unseal_value(const StateKey& state_key, const SealedKey& sealed_key, ByteView blob) {
    if (blob.size() < 12 + 16) throw crypto::AuthenticationError{};
    crypto::AeadNonce nonce{};
    std::copy_n(blob.begin(), 12, nonce.begin());
    return crypto::aead_open(state_key, nonce, blob.subspan(12), sealed_key);
}

}  // namespace nfp::chain
