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

#include <nfp/crypto/bytes.hpp>

#include <algorithm>
#include <string_view>
#include <unordered_set>

#include <openssl/evp.h>

namespace nfp {

namespace {

    int hex_digit(char c) {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    }

}  // namespace

std::string to_hex(ByteView data) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    if (hex.starts_with("0x")) hex.remove_prefix(2);
    if (hex.size() % 2 != 0) throw DecodingError("odd-length hex string");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = hex_digit(hex[2 * i]);
        const int lo = hex_digit(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw DecodingError("invalid hex character");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::string to_base64(ByteView data) {
    std::string out(4 * ((data.size() + 2) / 3), '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), data.data(), static_cast<int>(data.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

Bytes from_base64(std::string_view text) {
    if (text.size() % 4 != 0) throw DecodingError("base64 length not a multiple of 4");
    if (text.empty()) return {};
    Bytes out(3 * text.size() / 4);
    const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()), static_cast<int>(text.size()));
    if (n < 0) throw DecodingError("invalid base64");
    // EVP_DecodeBlock keeps the zero bytes that padding stands for
    std::size_t pad = 0;
    if (text.ends_with("==")) {
        pad = 2;
    } else if (text.ends_with("=")) {
        pad = 1;
    }
    out.resize(static_cast<std::size_t>(n) - pad);
    return out;
}

Bytes concat(std::initializer_list<ByteView> parts) {
    Bytes out;
    std::size_t total = 0;
    for (auto p : parts) total += p.size();
    out.reserve(total);
    for (auto p : parts) append(out, p);
    return out;
}

FixedBytes<8> be64(std::uint64_t v) {
    FixedBytes<8> out{};
    for (int i = 7; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xff);
        v >>= 8;
    }
    return out;
}

bool shares_substring(ByteView haystack, ByteView needle, std::size_t window) {
    if (window == 0 || needle.size() < window || haystack.size() < window) return false;
    std::unordered_set<std::string_view> grams;
    grams.reserve(needle.size());
    const auto* base = reinterpret_cast<const char*>(needle.data());
    for (std::size_t i = 0; i + window <= needle.size(); ++i) grams.emplace(base + i, window);
    const auto* hay = reinterpret_cast<const char*>(haystack.data());
    for (std::size_t i = 0; i + window <= haystack.size(); ++i) {
        if (grams.contains(std::string_view(hay + i, window))) return true;
    }
    return false;
}

}  // namespace nfp
