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

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <nfp/crypto/hash.hpp>

#include "support/reference_address.hpp"

namespace nfp::crypto {

TEST_CASE("sha256 and ripemd160 known answers") {
    CHECK(to_hex(sha256(as_bytes("abc"))) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(to_hex(ripemd160(as_bytes(""))) == "9c1185a5c5e9fc54612808977ee8f548b2258d31");
    CHECK(to_hex(ripemd160(as_bytes("abc"))) == "8eb208f7e05d987a9b044a8e98c6b087f15a0bfc");
}

TEST_CASE("reference oracle hashes agree with library on random inputs") {
    std::mt19937 rng{42};
    for (int trial = 0; trial < 200; ++trial) {
        Bytes data(rng() % 300);
        for (auto& b : data) b = static_cast<std::uint8_t>(rng());
        const auto s = sha256(data);
        CHECK(Bytes(s.begin(), s.end()) == test::reference::sha256(data));
        const auto r = ripemd160(data);
        CHECK(Bytes(r.begin(), r.end()) == test::reference::ripemd160(data));
    }
}

TEST_CASE("hkdf RFC 5869 test case 1") {
    const Bytes ikm(22, 0x0b);
    const Bytes salt = from_hex("000102030405060708090a0b0c");
    const Bytes info = from_hex("f0f1f2f3f4f5f6f7f8f9");
    CHECK(to_hex(hkdf_sha256(ikm, salt, info, 42)) ==
          "3cb25f25faacd57a90434f64d0362f2a2d2d0a90cf1a5a4c5db02d56ecc4c5bf34007208d5b887185865");
}

TEST_CASE("hmac-sha256 RFC 4231 case 2") {
    CHECK(to_hex(hmac_sha256(as_bytes("Jefe"), as_bytes("what do ya want for nothing?"))) ==
          "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843");
}

TEST_CASE("incremental sha256 matches one-shot") {
    Sha256 h;
    h.update(as_bytes("ab")).update(as_bytes("c"));
    CHECK(h.finish() == sha256(as_bytes("abc")));
}

TEST_CASE("drbg is deterministic per seed and counter") {
    Drbg a{sha256(as_bytes("seed"))};
    Drbg b{sha256(as_bytes("seed"))};
    CHECK(a.next<48>() == b.next<48>());
    CHECK(a.counter() == 2);
    Drbg c{sha256(as_bytes("seed")), 2};
    CHECK(a.next<32>() == c.next<32>());
    Drbg d{sha256(as_bytes("other"))};
    CHECK(d.next<32>() != Drbg{sha256(as_bytes("seed"))}.next<32>());
}

TEST_CASE("hex and base64 helpers") {
    CHECK(from_hex("0xdeadBEEF") == Bytes{0xde, 0xad, 0xbe, 0xef});
    CHECK_THROWS_AS(from_hex("abc"), DecodingError);
    CHECK_THROWS_AS(from_hex("zz"), DecodingError);
    for (std::size_t n = 0; n < 8; ++n) {
        Bytes data(n, 0xa5);
        CHECK(from_base64(to_base64(data)) == data);
    }
    CHECK(to_base64(as_bytes("foobar")) == "Zm9vYmFy");
    CHECK_THROWS_AS(from_base64("abc"), DecodingError);
}

}  // namespace nfp::crypto
