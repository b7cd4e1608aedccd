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

#include <cstdint>
#include <memory>

#include <nfp/crypto/bytes.hpp>

namespace nfp::crypto {

[[nodiscard]] Hash256 sha256(ByteView data);
[[nodiscard]] FixedBytes<20> ripemd160(ByteView data);

//! RIPEMD160(SHA256(data)), the account-address digest.
[[nodiscard]] FixedBytes<20> hash160(ByteView data);

[[nodiscard]] Hash256 hmac_sha256(ByteView key, ByteView data);

//! RFC 5869 extract-and-expand.
[[nodiscard]] Bytes hkdf_sha256(ByteView ikm, ByteView salt, ByteView info, std::size_t length);

//! Incremental SHA-256 for multi-part inputs.
class Sha256 {
  public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    Sha256& update(ByteView data);
    [[nodiscard]] Hash256 finish();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

//! Deterministic byte generator: SHA256(seed || counter) blocks.
//! Drives every piece of chain-side randomness so a seed replays bit-for-bit.
class Drbg {
  public:
    explicit Drbg(Hash256 seed, std::uint64_t counter = 0) : seed_{seed}, counter_{counter} {}

    void fill(std::span<std::uint8_t> out);

    template <std::size_t N>
    FixedBytes<N> next() {
        FixedBytes<N> out{};
        fill(out);
        return out;
    }

    [[nodiscard]] const Hash256& seed() const { return seed_; }
    [[nodiscard]] std::uint64_t counter() const { return counter_; }

  private:
    Hash256 seed_;
    std::uint64_t counter_;
};

//! Fills `out` from the operating system CSPRNG.
void os_random(std::span<std::uint8_t> out);

}  // namespace nfp::crypto
