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

// RIPEMD160() is a deprecated low-level call in OpenSSL 3.0, but the EVP route
// needs the legacy provider before 3.0.7.
#define OPENSSL_SUPPRESS_DEPRECATED

#include <nfp/crypto/hash.hpp>

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/kdf.h>
#include <openssl/rand.h>
#include <openssl/ripemd.h>
#include <openssl/sha.h>

namespace nfp::crypto {

Hash256 sha256(ByteView data) {
    Hash256 out{};
    SHA256(data.data(), data.size(), out.data());
    return out;
}

FixedBytes<20> ripemd160(ByteView data) {
    FixedBytes<20> out{};
    RIPEMD160(data.data(), data.size(), out.data());
    return out;
}

FixedBytes<20> hash160(ByteView data) {
    const Hash256 inner = sha256(data);
    return ripemd160(inner);
}

Hash256 hmac_sha256(ByteView key, ByteView data) {
    Hash256 out{};
    unsigned int len = 0;
    HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(), out.data(), &len);
    return out;
}

Bytes hkdf_sha256(ByteView ikm, ByteView salt, ByteView info, std::size_t length) {
    EVP_PKEY_CTX* ctx = EVP_PKEY_CTX_new_id(EVP_PKEY_HKDF, nullptr);
    if (ctx == nullptr) throw Error("hkdf: context allocation failed");
    Bytes out(length);
    std::size_t out_len = length;
    const bool ok = EVP_PKEY_derive_init(ctx) > 0 && EVP_PKEY_CTX_set_hkdf_md(ctx, EVP_sha256()) > 0 &&
                    EVP_PKEY_CTX_set1_hkdf_salt(ctx, salt.data(), static_cast<int>(salt.size())) > 0 &&
                    EVP_PKEY_CTX_set1_hkdf_key(ctx, ikm.data(), static_cast<int>(ikm.size())) > 0 &&
                    EVP_PKEY_CTX_add1_hkdf_info(ctx, info.data(), static_cast<int>(info.size())) > 0 &&
                    EVP_PKEY_derive(ctx, out.data(), &out_len) > 0;
    EVP_PKEY_CTX_free(ctx);
    if (!ok || out_len != length) throw Error("hkdf: derivation failed");
    return out;
}

struct Sha256::Impl {
    SHA256_CTX ctx;
};

Sha256::Sha256() : impl_{std::make_unique<Impl>()} { SHA256_Init(&impl_->ctx); }

Sha256::~Sha256() = default;

Sha256& Sha256::update(ByteView data) {
    SHA256_Update(&impl_->ctx, data.data(), data.size());
    return *this;
}

Hash256 Sha256::finish() {
    Hash256 out{};
    SHA256_Final(out.data(), &impl_->ctx);
    return out;
}

void Drbg::fill(std::span<std::uint8_t> out) {
    std::size_t pos = 0;
    while (pos < out.size()) {
        const auto block = sha256(concat({seed_, be64(counter_++)}));
        const std::size_t take = std::min(block.size(), out.size() - pos);
        std::copy_n(block.begin(), take, out.begin() + static_cast<std::ptrdiff_t>(pos));
        pos += take;
    }
}

void os_random(std::span<std::uint8_t> out) {
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) throw Error("os_random: RAND_bytes failed");
}

}  // namespace nfp::crypto
