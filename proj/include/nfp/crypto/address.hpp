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
#include <string>
#include <string_view>

#include <nfp/crypto/bytes.hpp>
#include <nfp/crypto/secp256k1.hpp>

namespace nfp {

//! Account or contract address; canonical text form is Bech32 with HRP "secret".
class Address {
  public:
    static constexpr std::string_view kHrp = "secret";
    static constexpr std::size_t kSize = 20;

    Address() = default;
    explicit Address(const FixedBytes<kSize>& payload) : payload_{payload} {}

    //! Throws DecodingError on a bad checksum, wrong HRP, or wrong payload length.
    static Address parse(std::string_view text);

    [[nodiscard]] const FixedBytes<kSize>& payload() const { return payload_; }
    [[nodiscard]] std::string str() const;
    [[nodiscard]] bool empty() const { return payload_ == FixedBytes<kSize>{}; }

    auto operator<=>(const Address&) const = default;

  private:
    FixedBytes<kSize> payload_{};
};

//! payload = RIPEMD160(SHA256(compressed public key)).
[[nodiscard]] Address derive_address(const crypto::PublicKey& pub);

}  // namespace nfp
