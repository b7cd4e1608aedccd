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

#include <string>
#include <string_view>

#include <nfp/crypto/bytes.hpp>

namespace nfp::crypto {

//! BIP-173 Bech32 (original checksum constant 1).
namespace bech32 {

    struct Decoded {
        std::string hrp;
        Bytes data;  // 5-bit groups
        bool operator==(const Decoded&) const = default;
    };

    //! Encodes 5-bit groups. Throws DecodingError on an invalid HRP.
    [[nodiscard]] std::string encode_groups(std::string_view hrp, ByteView groups);

    //! Decodes and verifies the checksum. `max_length` is the BIP-173 limit by default.
    [[nodiscard]] Decoded decode_groups(std::string_view text, std::size_t max_length = 90);

    [[nodiscard]] Bytes convert_bits(ByteView in, int from_bits, int to_bits, bool pad);

    //! Byte payload convenience wrappers (8 -> 5 bit regrouping).
    [[nodiscard]] std::string encode(std::string_view hrp, ByteView payload);

    struct DecodedPayload {
        std::string hrp;
        Bytes payload;
    };
    [[nodiscard]] DecodedPayload decode(std::string_view text, std::size_t max_length = 90);

}  // namespace bech32

}  // namespace nfp::crypto
