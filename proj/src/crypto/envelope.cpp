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

#include <nfp/crypto/envelope.hpp>

#include <algorithm>

#include <nfp/crypto/hash.hpp>

namespace nfp::crypto {

Bytes Envelope::serialize() const {
    return concat({ephemeral_pub.bytes(), nonce, ciphertext});
}

Envelope Envelope::parse(ByteView wire) {
    if (wire.size() < kHeaderSize + 16) throw DecodingError("envelope: too short");
    Envelope env;
    env.ephemeral_pub = X25519Public::from_bytes(wire.first(32));
    std::copy_n(wire.begin() + 32, 12, env.nonce.begin());
    env.ciphertext.assign(wire.begin() + kHeaderSize, wire.end());
    return env;
}

Envelope Envelope::parse_hex(std::string_view hex) { return parse(from_hex(hex)); }

FixedBytes<32> envelope_key(const X25519Secret& own, const X25519Public& peer) {
    const auto shared = x25519_shared(own, peer);
    const Bytes okm = hkdf_sha256(shared, {}, as_bytes(kEnvelopeKdfLabel), 32);
    FixedBytes<32> key{};
    std::copy(okm.begin(), okm.end(), key.begin());
    return key;
}

AeadNonce response_nonce(const AeadNonce& request_nonce) {
    AeadNonce n = request_nonce;
    n.back() ^= 0x01;
    return n;
}

Envelope envelope_encrypt(const X25519Secret& tx_secret, const X25519Public& consensus_pub, ByteView plaintext,
                          const AeadNonce& nonce) {
    Envelope env;
    env.ephemeral_pub = tx_secret.public_key();
    env.nonce = nonce;
    const auto key = envelope_key(tx_secret, consensus_pub);
    env.ciphertext = aead_seal(key, nonce, plaintext, env.ephemeral_pub.bytes());
    return env;
}

Envelope envelope_encrypt(const X25519Secret& tx_secret, const X25519Public& consensus_pub, ByteView plaintext) {
    AeadNonce nonce{};
    os_random(nonce);
    return envelope_encrypt(tx_secret, consensus_pub, plaintext, nonce);
}

Bytes envelope_decrypt(const X25519Secret& consensus_secret, const Envelope& env) {
    try {
        const auto key = envelope_key(consensus_secret, env.ephemeral_pub);
        return aead_open(key, env.nonce, env.ciphertext, env.ephemeral_pub.bytes());
    } catch (const Error&) {
        throw TransportError{};
    }
}

Envelope envelope_seal_response(const X25519Secret& consensus_secret, const Envelope& request, ByteView plaintext) {
    Envelope env;
    env.ephemeral_pub = request.ephemeral_pub;
    env.nonce = response_nonce(request.nonce);
    const auto key = envelope_key(consensus_secret, request.ephemeral_pub);
    env.ciphertext = aead_seal(key, env.nonce, plaintext, env.ephemeral_pub.bytes());
    return env;
}

Bytes envelope_open_response(const X25519Secret& tx_secret, const X25519Public& consensus_pub, const Envelope& request,
                             const Envelope& response) {
    try {
        if (response.ephemeral_pub != request.ephemeral_pub || response.nonce != response_nonce(request.nonce)) {
            throw TransportError{};
        }
        const auto key = envelope_key(tx_secret, consensus_pub);
        return aead_open(key, response.nonce, response.ciphertext, response.ephemeral_pub.bytes());
    } catch (const Error&) {
        throw TransportError{};
    }
}

}  // namespace nfp::crypto
