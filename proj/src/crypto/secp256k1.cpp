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

#include <nfp/crypto/secp256k1.hpp>

#include <memory>

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>

#include <nfp/crypto/hash.hpp>

namespace nfp::crypto {

namespace {

    struct BnDeleter {
        void operator()(BIGNUM* p) const { BN_clear_free(p); }
    };
    struct CtxDeleter {
        void operator()(BN_CTX* p) const { BN_CTX_free(p); }
    };
    struct PointDeleter {
        void operator()(EC_POINT* p) const { EC_POINT_free(p); }
    };
    using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
    using CtxPtr = std::unique_ptr<BN_CTX, CtxDeleter>;
    using PointPtr = std::unique_ptr<EC_POINT, PointDeleter>;

    BnPtr bn_new() {
        BnPtr p{BN_new()};
        if (!p) throw Error("secp256k1: BN_new failed");
        return p;
    }

    BnPtr bn_from(ByteView be) {
        BnPtr p{BN_bin2bn(be.data(), static_cast<int>(be.size()), nullptr)};
        if (!p) throw Error("secp256k1: BN_bin2bn failed");
        return p;
    }

    FixedBytes<32> bn_to32(const BIGNUM* v) {
        FixedBytes<32> out{};
        if (BN_bn2binpad(v, out.data(), 32) != 32) throw Error("secp256k1: scalar does not fit in 32 bytes");
        return out;
    }

    // Curve parameters are created once and only read afterwards.
    struct Curve {
        EC_GROUP* group;
        BIGNUM* order;
        BIGNUM* half_order;

        Curve() : group{EC_GROUP_new_by_curve_name(NID_secp256k1)}, order{BN_new()}, half_order{BN_new()} {
            if (group == nullptr || order == nullptr || half_order == nullptr) throw Error("secp256k1: curve setup failed");
            EC_GROUP_get_order(group, order, nullptr);
            BN_rshift1(half_order, order);
        }
        ~Curve() {
            BN_free(half_order);
            BN_free(order);
            EC_GROUP_free(group);
        }
        Curve(const Curve&) = delete;
        Curve& operator=(const Curve&) = delete;
    };

    const Curve& curve() {
        static const Curve c;
        return c;
    }

    bool scalar_in_range(const BIGNUM* k) { return !BN_is_zero(k) && !BN_is_negative(k) && BN_cmp(k, curve().order) < 0; }

    PointPtr decode_point(ByteView bytes, BN_CTX* ctx) {
        PointPtr p{EC_POINT_new(curve().group)};
        if (!p || EC_POINT_oct2point(curve().group, p.get(), bytes.data(), bytes.size(), ctx) != 1) return nullptr;
        return p;
    }

    // RFC 6979 section 3.2 with HMAC-SHA256; qlen == hlen == 256 so bits2int is the identity.
    class NonceGenerator {
      public:
        NonceGenerator(const FixedBytes<32>& key, const FixedBytes<32>& h1_reduced) {
            v_.fill(0x01);
            k_.fill(0x00);
            k_ = hmac_sha256(k_, concat({v_, std::array<std::uint8_t, 1>{0x00}, key, h1_reduced}));
            v_ = hmac_sha256(k_, v_);
            k_ = hmac_sha256(k_, concat({v_, std::array<std::uint8_t, 1>{0x01}, key, h1_reduced}));
            v_ = hmac_sha256(k_, v_);
        }

        FixedBytes<32> next() {
            if (started_) {
                k_ = hmac_sha256(k_, concat({v_, std::array<std::uint8_t, 1>{0x00}}));
                v_ = hmac_sha256(k_, v_);
            }
            started_ = true;
            v_ = hmac_sha256(k_, v_);
            return v_;
        }

      private:
        Hash256 v_{};
        Hash256 k_{};
        bool started_{false};
    };

}  // namespace

PublicKey PublicKey::from_compressed(ByteView bytes) {
    if (bytes.size() != kSize || (bytes[0] != 0x02 && bytes[0] != 0x03)) {
        throw DecodingError("secp256k1: public key must be 33-byte compressed form");
    }
    CtxPtr ctx{BN_CTX_new()};
    if (!decode_point(bytes, ctx.get())) throw DecodingError("secp256k1: point not on curve");
    FixedBytes<kSize> b{};
    std::copy(bytes.begin(), bytes.end(), b.begin());
    return PublicKey{b};
}

PrivateKey PrivateKey::from_bytes(ByteView scalar) {
    if (scalar.size() != kSize) throw DecodingError("secp256k1: private key must be 32 bytes");
    const BnPtr k = bn_from(scalar);
    if (!scalar_in_range(k.get())) throw DecodingError("secp256k1: private scalar out of range");
    FixedBytes<kSize> s{};
    std::copy(scalar.begin(), scalar.end(), s.begin());
    return PrivateKey{s};
}

PrivateKey PrivateKey::from_seed(ByteView seed) {
    Hash256 candidate = sha256(seed);
    for (;;) {
        const BnPtr k = bn_from(candidate);
        if (scalar_in_range(k.get())) return PrivateKey{candidate};
        candidate = sha256(candidate);
    }
}

PrivateKey PrivateKey::generate() {
    FixedBytes<kSize> buf{};
    os_random(buf);
    return from_seed(buf);
}

PublicKey PrivateKey::public_key() const {
    CtxPtr ctx{BN_CTX_new()};
    const BnPtr k = bn_from(scalar_);
    PointPtr p{EC_POINT_new(curve().group)};
    if (!p || EC_POINT_mul(curve().group, p.get(), k.get(), nullptr, nullptr, ctx.get()) != 1) {
        throw Error("secp256k1: scalar multiplication failed");
    }
    FixedBytes<PublicKey::kSize> out{};
    if (EC_POINT_point2oct(curve().group, p.get(), POINT_CONVERSION_COMPRESSED, out.data(), out.size(), ctx.get()) != out.size()) {
        throw Error("secp256k1: point encoding failed");
    }
    return PublicKey{out};
}

FixedBytes<64> Signature::compact() const {
    FixedBytes<64> out{};
    std::copy(r.begin(), r.end(), out.begin());
    std::copy(s.begin(), s.end(), out.begin() + 32);
    return out;
}

Signature Signature::from_compact(ByteView bytes) {
    if (bytes.size() != 64) throw DecodingError("signature must be 64 bytes");
    Signature sig;
    std::copy_n(bytes.begin(), 32, sig.r.begin());
    std::copy_n(bytes.begin() + 32, 32, sig.s.begin());
    return sig;
}

Signature sign_digest(const PrivateKey& key, const Hash256& digest) {
    const Curve& c = curve();
    CtxPtr ctx{BN_CTX_new()};
    const BnPtr d = bn_from(key.bytes());
    BnPtr z = bn_from(digest);
    BnPtr z_reduced = bn_new();
    BN_nnmod(z_reduced.get(), z.get(), c.order, ctx.get());

    NonceGenerator nonces{key.bytes(), bn_to32(z_reduced.get())};
    for (;;) {
        const BnPtr k = bn_from(nonces.next());
        if (!scalar_in_range(k.get())) continue;

        PointPtr rp{EC_POINT_new(c.group)};
        EC_POINT_mul(c.group, rp.get(), k.get(), nullptr, nullptr, ctx.get());
        BnPtr x = bn_new();
        EC_POINT_get_affine_coordinates(c.group, rp.get(), x.get(), nullptr, ctx.get());
        BnPtr r = bn_new();
        BN_nnmod(r.get(), x.get(), c.order, ctx.get());
        if (BN_is_zero(r.get())) continue;

        // s = k^-1 (z + r d) mod n
        BnPtr k_inv{BN_mod_inverse(nullptr, k.get(), c.order, ctx.get())};
        BnPtr rd = bn_new();
        BN_mod_mul(rd.get(), r.get(), d.get(), c.order, ctx.get());
        BnPtr sum = bn_new();
        BN_mod_add(sum.get(), z_reduced.get(), rd.get(), c.order, ctx.get());
        BnPtr s = bn_new();
        BN_mod_mul(s.get(), k_inv.get(), sum.get(), c.order, ctx.get());
        if (BN_is_zero(s.get())) continue;
        if (BN_cmp(s.get(), c.half_order) > 0) BN_sub(s.get(), c.order, s.get());

        return Signature{bn_to32(r.get()), bn_to32(s.get())};
    }
}

Signature sign(const PrivateKey& key, ByteView msg) { return sign_digest(key, sha256(msg)); }

bool verify_digest(const PublicKey& key, const Hash256& digest, const Signature& sig) {
    const Curve& c = curve();
    CtxPtr ctx{BN_CTX_new()};
    const BnPtr r = bn_from(sig.r);
    const BnPtr s = bn_from(sig.s);
    if (!scalar_in_range(r.get()) || !scalar_in_range(s.get())) return false;
    if (BN_cmp(s.get(), c.half_order) > 0) return false;

    const PointPtr q = decode_point(key.bytes(), ctx.get());
    if (!q) return false;

    BnPtr z = bn_from(digest);
    BN_nnmod(z.get(), z.get(), c.order, ctx.get());
    BnPtr s_inv{BN_mod_inverse(nullptr, s.get(), c.order, ctx.get())};
    if (!s_inv) return false;
    BnPtr u1 = bn_new();
    BnPtr u2 = bn_new();
    BN_mod_mul(u1.get(), z.get(), s_inv.get(), c.order, ctx.get());
    BN_mod_mul(u2.get(), r.get(), s_inv.get(), c.order, ctx.get());

    PointPtr rp{EC_POINT_new(c.group)};
    if (EC_POINT_mul(c.group, rp.get(), u1.get(), q.get(), u2.get(), ctx.get()) != 1) return false;
    if (EC_POINT_is_at_infinity(c.group, rp.get())) return false;
    BnPtr x = bn_new();
    EC_POINT_get_affine_coordinates(c.group, rp.get(), x.get(), nullptr, ctx.get());
    BN_nnmod(x.get(), x.get(), c.order, ctx.get());
    return BN_cmp(x.get(), r.get()) == 0;
}

bool verify(const PublicKey& key, ByteView msg, const Signature& sig) { return verify_digest(key, sha256(msg), sig); }

}  // namespace nfp::crypto
