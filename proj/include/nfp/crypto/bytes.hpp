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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nfp {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

template <std::size_t N>
using FixedBytes = std::array<std::uint8_t, N>;

using Hash256 = FixedBytes<32>;

//! Base class for every error raised by this project.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DecodingError : public Error {
  public:
    using Error::Error;
};

[[nodiscard]] std::string to_hex(ByteView data);
[[nodiscard]] Bytes from_hex(std::string_view hex);

template <std::size_t N>
[[nodiscard]] FixedBytes<N> fixed_from_hex(std::string_view hex) {
    const Bytes raw = from_hex(hex);
    if (raw.size() != N) {
        throw DecodingError("expected " + std::to_string(N) + " bytes of hex, got " + std::to_string(raw.size()));
    }
    FixedBytes<N> out{};
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

[[nodiscard]] std::string to_base64(ByteView data);
[[nodiscard]] Bytes from_base64(std::string_view text);

[[nodiscard]] inline ByteView as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

[[nodiscard]] inline Bytes to_bytes(std::string_view s) {
    const auto v = as_bytes(s);
    return {v.begin(), v.end()};
}

[[nodiscard]] inline std::string to_string(ByteView b) {
    return {reinterpret_cast<const char*>(b.data()), b.size()};
}

inline void append(Bytes& out, ByteView tail) { out.insert(out.end(), tail.begin(), tail.end()); }

[[nodiscard]] Bytes concat(std::initializer_list<ByteView> parts);

//! Big-endian fixed width encoding, used for hashing heights and counters.
[[nodiscard]] FixedBytes<8> be64(std::uint64_t v);

//! Returns true when `needle` (at least `window` long) shares any `window`-byte run with `haystack`.
[[nodiscard]] bool shares_substring(ByteView haystack, ByteView needle, std::size_t window);

}  // namespace nfp
