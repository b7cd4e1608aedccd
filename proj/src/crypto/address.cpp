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

#include <nfp/crypto/address.hpp>

#include <algorithm>

#include <nfp/crypto/bech32.hpp>
#include <nfp/crypto/hash.hpp>

namespace nfp {

Address Address::parse(std::string_view text) {
    const auto decoded = crypto::bech32::decode(text);
    if (decoded.hrp != kHrp) throw DecodingError("address: unexpected prefix '" + decoded.hrp + "'");
    if (decoded.payload.size() != kSize) throw DecodingError("address: payload must be 20 bytes");
    FixedBytes<kSize> payload{};
    std::copy(decoded.payload.begin(), decoded.payload.end(), payload.begin());
    return Address{payload};
}

std::string Address::str() const { return crypto::bech32::encode(kHrp, payload_); }

Address derive_address(const crypto::PublicKey& pub) { return Address{crypto::hash160(pub.bytes())}; }

}  // namespace nfp
