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

#include <nfp/crypto/aes_gcm_siv.hpp>

#include <cstring>
#include <memory>

#include <openssl/crypto.h>
#include <openssl/evp.h>

namespace nfp::crypto {

namespace {

    using Block = FixedBytes<16>;

    // Element of GF(2^128) in GHASH bit order: `hi` holds bytes 0..7 big-endian.
    struct Gf128 {
        std::uint64_t hi{0};
        std::uint64_t lo{0};
    };

    std::uint64_t load_le64(const std::uint8_t* p) {
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
        return v;
    }

    void store_le64(std::uint8_t* p, std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            p[i] = static_cast<std::uint8_t>(v & 0xff);
            v >>= 8;
        }
    }

    // ByteReverse of a POLYVAL block read as a GHASH element.
    Gf128 from_polyval_block(const std::uint8_t* p) { return {load_le64(p + 8), load_le64(p)}; }

    Block to_polyval_block(const Gf128& v) {
        Block out{};
        store_le64(out.data(), v.lo);
        store_le64(out.data() + 8, v.hi);
        return out;
    }

    constexpr std::uint64_t kReduce = 0xe100000000000000ULL;

    Gf128 mul_x(Gf128 v) {
        const bool carry = (v.lo & 1) != 0;
        v.lo = (v.lo >> 1) | (v.hi << 63);
        v.hi >>= 1;
        if (carry) v.hi ^= kReduce;
        return v;
    }

    // NIST SP 800-38D, Algorithm 1.
    Gf128 ghash_mul(const Gf128& x, Gf128 v) {
        Gf128 z;
        for (int i = 0; i < 128; ++i) {
            const std::uint64_t word = i < 64 ? x.hi : x.lo;
            if ((word >> (63 - (i & 63))) & 1) {
                z.hi ^= v.hi;
                z.lo ^= v.lo;
            }
            v = mul_x(v);
        }
        return z;
    }

    class PolyvalState {
      public:
        explicit PolyvalState(const Block& h) : h_{mul_x(from_polyval_block(h.data()))} {}

        void absorb(const std::uint8_t* block) {
            const Gf128 x = from_polyval_block(block);
            acc_.hi ^= x.hi;
            acc_.lo ^= x.lo;
            acc_ = ghash_mul(acc_, h_);
        }

        void absorb_padded(ByteView data) {
            std::size_t i = 0;
            for (; i + 16 <= data.size(); i += 16) absorb(data.data() + i);
            if (i < data.size()) {
                Block last{};
                std::memcpy(last.data(), data.data() + i, data.size() - i);
                absorb(last.data());
            }
        }

        [[nodiscard]] Block digest() const { return to_polyval_block(acc_); }

      private:
        Gf128 h_;
        Gf128 acc_;
    };

    struct CipherCtxDeleter {
        void operator()(EVP_CIPHER_CTX* p) const { EVP_CIPHER_CTX_free(p); }
    };

    class AesEcb {
      public:
        explicit AesEcb(ByteView key) : ctx_{EVP_CIPHER_CTX_new()} {
            const EVP_CIPHER* cipher = key.size() == 16 ? EVP_aes_128_ecb() : EVP_aes_256_ecb();
            if (!ctx_ || EVP_EncryptInit_ex(ctx_.get(), cipher, nullptr, key.data(), nullptr) != 1) {
                throw Error("aes: cipher init failed");
            }
            EVP_CIPHER_CTX_set_padding(ctx_.get(), 0);
        }

        void encrypt(const std::uint8_t* in, std::uint8_t* out, std::size_t len) {
            int out_len = 0;
            if (EVP_EncryptUpdate(ctx_.get(), out, &out_len, in, static_cast<int>(len)) != 1) {
                throw Error("aes: encrypt failed");
            }
        }

        Block encrypt_block(const Block& in) {
            Block out{};
            encrypt(in.data(), out.data(), 16);
            return out;
        }

      private:
        std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter> ctx_;
    };

    struct DerivedKeys {
        Block auth_key{};
        Bytes enc_key;
    };

    DerivedKeys derive_keys(ByteView key, const AeadNonce& nonce) {
        AesEcb aes{key};
        const std::size_t enc_blocks = key.size() == 16 ? 2 : 4;
        DerivedKeys out;
        out.enc_key.reserve(enc_blocks * 8);
        for (std::uint32_t i = 0; i < 2 + enc_blocks; ++i) {
            Block in{};
            in[0] = static_cast<std::uint8_t>(i);
            std::memcpy(in.data() + 4, nonce.data(), nonce.size());
            const Block b = aes.encrypt_block(in);
            if (i < 2) {
                std::memcpy(out.auth_key.data() + 8 * i, b.data(), 8);
            } else {
                out.enc_key.insert(out.enc_key.end(), b.begin(), b.begin() + 8);
            }
        }
        return out;
    }

    Block compute_tag(const DerivedKeys& keys, const AeadNonce& nonce, ByteView plaintext, ByteView aad) {
        PolyvalState pv{keys.auth_key};
        pv.absorb_padded(aad);
        pv.absorb_padded(plaintext);
        Block lengths{};
        store_le64(lengths.data(), static_cast<std::uint64_t>(aad.size()) * 8);
        store_le64(lengths.data() + 8, static_cast<std::uint64_t>(plaintext.size()) * 8);
        pv.absorb(lengths.data());

        Block s = pv.digest();
        for (std::size_t i = 0; i < nonce.size(); ++i) s[i] ^= nonce[i];
        s[15] &= 0x7f;
        AesEcb aes{keys.enc_key};
        return aes.encrypt_block(s);
    }

    // CTR mode with a 32-bit little-endian counter in the first word of the block.
    void ctr_xor(ByteView enc_key, const Block& tag, ByteView in, std::uint8_t* out) {
        if (in.empty()) return;
        Block counter = tag;
        counter[15] |= 0x80;
        std::uint32_t ctr = static_cast<std::uint32_t>(counter[0]) | (static_cast<std::uint32_t>(counter[1]) << 8) |
                            (static_cast<std::uint32_t>(counter[2]) << 16) | (static_cast<std::uint32_t>(counter[3]) << 24);
        const std::size_t blocks = (in.size() + 15) / 16;
        Bytes stream(blocks * 16);
        for (std::size_t b = 0; b < blocks; ++b) {
            for (int i = 0; i < 4; ++i) counter[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(ctr >> (8 * i));
            std::memcpy(stream.data() + 16 * b, counter.data(), 16);
            ++ctr;
        }
        AesEcb aes{enc_key};
        aes.encrypt(stream.data(), stream.data(), stream.size());
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] ^ stream[i];
    }

    void check_key(ByteView key) {
        if (key.size() != 16 && key.size() != 32) throw Error("aead: key must be 16 or 32 bytes");
    }

}  // namespace

FixedBytes<16> polyval(const FixedBytes<16>& h, ByteView blocks) {
    if (blocks.size() % 16 != 0) throw Error("polyval: input must be whole blocks");
    PolyvalState pv{h};
    for (std::size_t i = 0; i < blocks.size(); i += 16) pv.absorb(blocks.data() + i);
    return pv.digest();
}

Bytes aead_seal(ByteView key, const AeadNonce& nonce, ByteView plaintext, ByteView aad) {
    check_key(key);
    const DerivedKeys keys = derive_keys(key, nonce);
    const Block tag = compute_tag(keys, nonce, plaintext, aad);
    Bytes out(plaintext.size() + tag.size());
    ctr_xor(keys.enc_key, tag, plaintext, out.data());
    std::memcpy(out.data() + plaintext.size(), tag.data(), tag.size());
    return out;
}

Bytes aead_open(ByteView key, const AeadNonce& nonce, ByteView sealed, ByteView aad) {
    check_key(key);
    if (sealed.size() < 16) throw AuthenticationError{};
    const DerivedKeys keys = derive_keys(key, nonce);
    const auto body = sealed.first(sealed.size() - 16);
    Block tag{};
    std::memcpy(tag.data(), sealed.data() + body.size(), 16);

    Bytes plaintext(body.size());
    ctr_xor(keys.enc_key, tag, body, plaintext.data());
    const Block expected = compute_tag(keys, nonce, plaintext, aad);
    if (CRYPTO_memcmp(expected.data(), tag.data(), tag.size()) != 0) {
        OPENSSL_cleanse(plaintext.data(), plaintext.size());
        throw AuthenticationError{};
    }
    return plaintext;
}

}  // namespace nfp::crypto
