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

#include <compare>

#include <nfp/crypto/bytes.hpp>

namespace nfp::crypto {

class PublicKey {
  public:
    static constexpr std::size_t kSize = 33;

    //! Parses a compressed SEC1 point; throws DecodingError if it is not on the curve.
    static PublicKey from_compressed(ByteView bytes);

    [[nodiscard]] const FixedBytes<kSize>& bytes() const { return bytes_; }
    [[nodiscard]] std::string hex() const { return to_hex(bytes_); }

    auto operator<=>(const PublicKey&) const = default;

  private:
    explicit PublicKey(const FixedBytes<kSize>& b) : bytes_{b} {}
    FixedBytes<kSize> bytes_;
    friend class PrivateKey;
};

class PrivateKey {
  public:
    static constexpr std::size_t kSize = 32;

    //! Throws DecodingError unless the scalar lies in [1, n-1].
    static PrivateKey from_bytes(ByteView scalar);

    //! Maps arbitrary seed bytes onto a valid scalar (SHA-256, rehashing until in range).
    static PrivateKey from_seed(ByteView seed);

    static PrivateKey generate();

    [[nodiscard]] PublicKey public_key() const;
    [[nodiscard]] const FixedBytes<kSize>& bytes() const { return scalar_; }

  private:
    explicit PrivateKey(const FixedBytes<kSize>& s) : scalar_{s} {}
    FixedBytes<kSize> scalar_;
};

struct Signature {
    FixedBytes<32> r{};
    FixedBytes<32> s{};

    [[nodiscard]] FixedBytes<64> compact() const;
    static Signature from_compact(ByteView bytes);

    bool operator==(const Signature&) const = default;
};

//! ECDSA over SHA256(msg) with RFC 6979 nonces; s is normalized to the low half.
[[nodiscard]] Signature sign(const PrivateKey& key, ByteView msg);

//! Same as `sign` for an already hashed message.
[[nodiscard]] Signature sign_digest(const PrivateKey& key, const Hash256& digest);

//! Never throws. High-s signatures are rejected.
[[nodiscard]] bool verify(const PublicKey& key, ByteView msg, const Signature& sig);
[[nodiscard]] bool verify_digest(const PublicKey& key, const Hash256& digest, const Signature& sig);

}  // namespace nfp::crypto
