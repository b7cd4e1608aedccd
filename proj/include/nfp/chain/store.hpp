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

#pragma once

#include <map>
#include <string_view>

#include <nfp/crypto/address.hpp>
#include <nfp/crypto/aes_gcm_siv.hpp>

namespace nfp::chain {

using StateKey = FixedBytes<32>;
using SealedKey = Hash256;

//! Contract storage at rest: every key is a keyed hash and every value an AEAD
//! ciphertext under the owning contract's state key.
struct SealedStore {
    std::map<Address, std::map<SealedKey, Bytes>> contracts;

    [[nodiscard]] std::size_t total_bytes() const;
};

//! HMAC-SHA256(state_key, key); hides the plaintext key layout.
[[nodiscard]] SealedKey seal_key(const StateKey& state_key, std::string_view key);

//! nonce (12) || AES-256-GCM-SIV(value), with the sealed key as associated data.
[[nodiscard]] Bytes seal_value(const StateKey& state_key, const SealedKey& sealed_key, ByteView value, const crypto::AeadNonce& nonce);

//! Throws crypto::AuthenticationError if the blob was not produced under this key and slot.
[[nodiscard]] Bytes unseal_value(const StateKey& state_key, const SealedKey& sealed_key, ByteView blob);

}  // namespace nfp::chain
