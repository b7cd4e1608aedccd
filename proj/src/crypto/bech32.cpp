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

#include <nfp/crypto/bech32.hpp>

#include <array>
#include <cctype>

namespace nfp::crypto::bech32 {

namespace {

    constexpr std::string_view kCharset = "qpzry9x8gf2tvdw0s3jn54khce6mua7l";
    constexpr std::size_t kMaxPayloadBytes = 64;

    std::uint32_t polymod(ByteView values) {
        static constexpr std::array<std::uint32_t, 5> kGen = {0x3b6a57b2, 0x26508e6d, 0x1ea119fa, 0x3d4233dd, 0x2a1462b3};
        std::uint32_t chk = 1;
        for (std::uint8_t v : values) {
            const std::uint32_t top = chk >> 25;
            chk = ((chk & 0x1ffffff) << 5) ^ v;
            for (int i = 0; i < 5; ++i) {
                if ((top >> i) & 1) chk ^= kGen[static_cast<std::size_t>(i)];
            }
        }
        return chk;
    }

    Bytes hrp_expand(std::string_view hrp) {
        Bytes out;
        out.reserve(hrp.size() * 2 + 1);
        for (char c : hrp) out.push_back(static_cast<std::uint8_t>(c) >> 5);
        out.push_back(0);
        for (char c : hrp) out.push_back(static_cast<std::uint8_t>(c) & 31);
        return out;
    }

    void check_hrp(std::string_view hrp) {
        if (hrp.empty() || hrp.size() > 83) throw DecodingError("bech32: HRP length out of range");
        for (char c : hrp) {
            const auto u = static_cast<unsigned char>(c);
            if (u < 33 || u > 126) throw DecodingError("bech32: HRP character out of range");
            if (std::isupper(u)) throw DecodingError("bech32: HRP must be lowercase");
        }
    }

}  // namespace

std::string encode_groups(std::string_view hrp, ByteView groups) {
    check_hrp(hrp);
    Bytes values = hrp_expand(hrp);
    append(values, groups);
    values.insert(values.end(), 6, 0);
    const std::uint32_t mod = polymod(values) ^ 1;

    std::string out{hrp};
    out.push_back('1');
    for (std::uint8_t g : groups) {
        if (g > 31) throw DecodingError("bech32: group value exceeds 5 bits");
        out.push_back(kCharset[g]);
    }
    for (int i = 0; i < 6; ++i) out.push_back(kCharset[(mod >> (5 * (5 - i))) & 31]);
    return out;
}

Decoded decode_groups(std::string_view text, std::size_t max_length) {
    if (text.size() > max_length) throw DecodingError("bech32: string too long");
    bool lower = false;
    bool upper = false;
    for (char c : text) {
        const auto u = static_cast<unsigned char>(c);
        if (u < 33 || u > 126) throw DecodingError("bech32: character out of range");
        lower |= std::islower(u) != 0;
        upper |= std::isupper(u) != 0;
    }
    if (lower && upper) throw DecodingError("bech32: mixed case");

    const std::size_t sep = text.rfind('1');
    if (sep == std::string_view::npos || sep == 0) throw DecodingError("bech32: missing separator or empty HRP");
    if (sep + 7 > text.size()) throw DecodingError("bech32: checksum too short");

    std::string hrp;
    for (char c : text.substr(0, sep)) hrp.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

    Bytes groups;
    for (char c : text.substr(sep + 1)) {
        const auto pos = kCharset.find(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (pos == std::string_view::npos) throw DecodingError("bech32: invalid data character");
        groups.push_back(static_cast<std::uint8_t>(pos));
    }

    Bytes values = hrp_expand(hrp);
    append(values, groups);
    if (polymod(values) != 1) throw DecodingError("bech32: checksum mismatch");
    groups.resize(groups.size() - 6);
    return {std::move(hrp), std::move(groups)};
}

Bytes convert_bits(ByteView in, int from_bits, int to_bits, bool pad) {
    std::uint32_t acc = 0;
    int bits = 0;
    const std::uint32_t maxv = (1u << to_bits) - 1;
    Bytes out;
    for (std::uint8_t v : in) {
        if ((v >> from_bits) != 0) throw DecodingError("bech32: value exceeds source width");
        acc = (acc << from_bits) | v;
        bits += from_bits;
        while (bits >= to_bits) {
            bits -= to_bits;
            out.push_back(static_cast<std::uint8_t>((acc >> bits) & maxv));
        }
    }
    if (pad) {
        if (bits > 0) out.push_back(static_cast<std::uint8_t>((acc << (to_bits - bits)) & maxv));
    } else if (bits >= from_bits || ((acc << (to_bits - bits)) & maxv) != 0) {
        throw DecodingError("bech32: non-zero padding");
    }
    return out;
}

std::string encode(std::string_view hrp, ByteView payload) {
    if (payload.size() > kMaxPayloadBytes) throw DecodingError("bech32: payload exceeds 64 bytes");
    return encode_groups(hrp, convert_bits(payload, 8, 5, true));
}

DecodedPayload decode(std::string_view text, std::size_t max_length) {
    auto groups = decode_groups(text, max_length);
    return {std::move(groups.hrp), convert_bits(groups.data, 5, 8, false)};
}

}  // namespace nfp::crypto::bech32
