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

#include <nfp/crypto/bytes.hpp>

namespace nfp::crypto {

class AuthenticationError : public Error {
  public:
    AuthenticationError() : Error("aead: authentication failed") {}
};

using AeadNonce = FixedBytes<12>;

//! AEAD_AES_128_GCM_SIV / AEAD_AES_256_GCM_SIV (RFC 8452), chosen by key length.
//! Output is ciphertext || 16-byte tag.
[[nodiscard]] Bytes aead_seal(ByteView key, const AeadNonce& nonce, ByteView plaintext, ByteView aad);

//! Throws AuthenticationError and releases no plaintext on any mismatch.
[[nodiscard]] Bytes aead_open(ByteView key, const AeadNonce& nonce, ByteView sealed, ByteView aad);

//! POLYVAL(H, X_1..X_n) over whole 16-byte blocks; exposed for tests.
[[nodiscard]] FixedBytes<16> polyval(const FixedBytes<16>& h, ByteView blocks);

}  // namespace nfp::crypto
