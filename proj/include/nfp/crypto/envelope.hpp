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

#include <string>
#include <string_view>

#include <nfp/crypto/aes_gcm_siv.hpp>
#include <nfp/crypto/bytes.hpp>
#include <nfp/crypto/x25519.hpp>

namespace nfp::crypto {

//! Encrypted wrapper for query and execute bodies.
//! Wire form: ephemeral_pub (32) || nonce (12) || ciphertext.
struct Envelope {
    static constexpr std::size_t kHeaderSize = 32 + 12;

    X25519Public ephemeral_pub;
    AeadNonce nonce{};
    Bytes ciphertext;

    [[nodiscard]] Bytes serialize() const;
    [[nodiscard]] std::string hex() const { return to_hex(serialize()); }

    static Envelope parse(ByteView wire);
    static Envelope parse_hex(std::string_view hex);

    bool operator==(const Envelope&) const = default;
};

//! Raised for every envelope failure; deliberately says nothing about the cause.
class TransportError : public Error {
  public:
    TransportError() : Error("envelope: decryption failed") {}
};

inline constexpr std::string_view kEnvelopeKdfLabel = "nfp-envelope-v1";

//! HKDF-SHA256 of the X25519 shared secret under the fixed context label.
[[nodiscard]] FixedBytes<32> envelope_key(const X25519Secret& own, const X25519Public& peer);

//! Response nonce: request nonce with the last byte flipped by 0x01.
[[nodiscard]] AeadNonce response_nonce(const AeadNonce& request_nonce);

[[nodiscard]] Envelope envelope_encrypt(const X25519Secret& tx_secret, const X25519Public& consensus_pub, ByteView plaintext,
                                        const AeadNonce& nonce);

//! Draws the nonce from the OS CSPRNG.
[[nodiscard]] Envelope envelope_encrypt(const X25519Secret& tx_secret, const X25519Public& consensus_pub, ByteView plaintext);

[[nodiscard]] Bytes envelope_decrypt(const X25519Secret& consensus_secret, const Envelope& env);

//! Chain side: encrypts a reply to `request` under the same derived key.
[[nodiscard]] Envelope envelope_seal_response(const X25519Secret& consensus_secret, const Envelope& request, ByteView plaintext);

//! Client side: opens the reply to a request it sent.
[[nodiscard]] Bytes envelope_open_response(const X25519Secret& tx_secret, const X25519Public& consensus_pub, const Envelope& request,
                                           const Envelope& response);

}  // namespace nfp::crypto
