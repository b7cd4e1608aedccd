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

class X25519Public {
  public:
    static constexpr std::size_t kSize = 32;

    X25519Public() = default;
    explicit X25519Public(const FixedBytes<kSize>& u) : bytes_{u} {}
    static X25519Public from_bytes(ByteView b);

    [[nodiscard]] const FixedBytes<kSize>& bytes() const { return bytes_; }
    bool operator==(const X25519Public&) const = default;

  private:
    FixedBytes<kSize> bytes_{};
};

//! Scalar is clamped on construction (RFC 7748 decodeScalar25519).
class X25519Secret {
  public:
    static constexpr std::size_t kSize = 32;

    explicit X25519Secret(const FixedBytes<kSize>& scalar);
    static X25519Secret from_bytes(ByteView b);
    static X25519Secret generate();

    [[nodiscard]] const FixedBytes<kSize>& bytes() const { return scalar_; }
    [[nodiscard]] X25519Public public_key() const;

  private:
    FixedBytes<kSize> scalar_;
};

class LowOrderPointError : public Error {
  public:
    LowOrderPointError() : Error("x25519: shared secret is all zero (low-order peer point)") {}
};

//! Throws LowOrderPointError when the result is the all-zero string.
[[nodiscard]] FixedBytes<32> x25519_shared(const X25519Secret& secret, const X25519Public& peer);

}  // namespace nfp::crypto
