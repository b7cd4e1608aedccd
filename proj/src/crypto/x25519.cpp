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

#include <nfp/crypto/x25519.hpp>

#include <algorithm>
#include <memory>

#include <openssl/crypto.h>
#include <openssl/evp.h>

#include <nfp/crypto/hash.hpp>

namespace nfp::crypto {

namespace {

    struct PkeyDeleter {
        void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
    };
    struct PkeyCtxDeleter {
        void operator()(EVP_PKEY_CTX* p) const { EVP_PKEY_CTX_free(p); }
    };
    using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
    using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, PkeyCtxDeleter>;

    PkeyPtr private_pkey(const FixedBytes<32>& scalar) {
        PkeyPtr p{EVP_PKEY_new_raw_private_key(EVP_PKEY_X25519, nullptr, scalar.data(), scalar.size())};
        if (!p) throw Error("x25519: invalid private key");
        return p;
    }

}  // namespace

X25519Public X25519Public::from_bytes(ByteView b) {
    if (b.size() != kSize) throw DecodingError("x25519: public key must be 32 bytes");
    FixedBytes<kSize> u{};
    std::copy(b.begin(), b.end(), u.begin());
    return X25519Public{u};
}

X25519Secret::X25519Secret(const FixedBytes<kSize>& scalar) : scalar_{scalar} {
    scalar_[0] &= 248;
    scalar_[31] &= 127;
    scalar_[31] |= 64;
}

X25519Secret X25519Secret::from_bytes(ByteView b) {
    if (b.size() != kSize) throw DecodingError("x25519: secret must be 32 bytes");
    FixedBytes<kSize> s{};
    std::copy(b.begin(), b.end(), s.begin());
    return X25519Secret{s};
}

X25519Secret X25519Secret::generate() {
    FixedBytes<kSize> s{};
    os_random(s);
    return X25519Secret{s};
}

X25519Public X25519Secret::public_key() const {
    const PkeyPtr key = private_pkey(scalar_);
    FixedBytes<32> out{};
    std::size_t len = out.size();
    if (EVP_PKEY_get_raw_public_key(key.get(), out.data(), &len) != 1 || len != out.size()) {
        throw Error("x25519: public key derivation failed");
    }
    return X25519Public{out};
}

FixedBytes<32> x25519_shared(const X25519Secret& secret, const X25519Public& peer) {
    const PkeyPtr key = private_pkey(secret.bytes());
    PkeyPtr peer_key{EVP_PKEY_new_raw_public_key(EVP_PKEY_X25519, nullptr, peer.bytes().data(), peer.bytes().size())};
    if (!peer_key) throw DecodingError("x25519: invalid peer key");
    PkeyCtxPtr ctx{EVP_PKEY_CTX_new(key.get(), nullptr)};
    FixedBytes<32> out{};
    std::size_t len = out.size();
    // OpenSSL fails the derive itself when the output is all zero.
    if (!ctx || EVP_PKEY_derive_init(ctx.get()) != 1 || EVP_PKEY_derive_set_peer(ctx.get(), peer_key.get()) != 1 ||
        EVP_PKEY_derive(ctx.get(), out.data(), &len) != 1) {
        throw LowOrderPointError{};
    }
    static constexpr FixedBytes<32> kZero{};
    if (CRYPTO_memcmp(out.data(), kZero.data(), out.size()) == 0) throw LowOrderPointError{};
    return out;
}

}  // namespace nfp::crypto
