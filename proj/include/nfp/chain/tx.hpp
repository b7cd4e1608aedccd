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

#include <optional>
#include <string>
#include <vector>

#include <nfp/chain/types.hpp>
#include <nfp/crypto/envelope.hpp>
#include <nfp/crypto/secp256k1.hpp>

namespace nfp::chain {

//! The signed part of a transaction. Its canonical JSON is the signature domain.
struct TxBody {
    //! Signer address is derived from the key; broadcast re-checks the pair.
    explicit TxBody(const crypto::PublicKey& pub) : signer{derive_address(pub)}, signer_pub{pub} {}

    std::string chain_id;
    Uscrt fee{0};
    std::optional<Address> fee_granter;
    std::vector<Json> msgs;
    std::uint64_t sequence{0};
    Address signer;
    crypto::PublicKey signer_pub;

    [[nodiscard]] Json to_json() const;
    static TxBody from_json(const Json& j);
    [[nodiscard]] std::string sign_bytes() const { return canonical(to_json()); }
};

struct SignedTx {
    TxBody body;
    crypto::Signature signature;

    [[nodiscard]] Json to_json() const;
    static SignedTx from_json(const Json& j);
    [[nodiscard]] Hash256 hash() const;
};

[[nodiscard]] SignedTx sign_tx(TxBody body, const crypto::PrivateKey& key);

//! Chain-level message constructors. Contract bodies are always envelopes.
namespace msg {
    [[nodiscard]] Json bank_send(const Address& to, Uscrt amount);
    [[nodiscard]] Json grant_fee_allowance(const Address& grantee, Uscrt spend_limit, std::optional<std::uint64_t> expiration);
    [[nodiscard]] Json revoke_fee_allowance(const Address& grantee);
    [[nodiscard]] Json instantiate(const std::string& code_id, const std::string& label, const crypto::Envelope& init, Uscrt funds = 0);
    [[nodiscard]] Json execute(const Address& contract, const crypto::Envelope& body, Uscrt funds = 0);
}  // namespace msg

namespace tx_code {
    inline constexpr const char* kOk = "ok";
    //! A message failed: fee charged, sequence advanced, all other state rolled back.
    inline constexpr const char* kFailed = "failed";
    inline constexpr const char* kMalformed = "rejected_malformed";
    inline constexpr const char* kBadSignature = "rejected_bad_signature";
    inline constexpr const char* kWrongChain = "rejected_wrong_chain";
    inline constexpr const char* kStaleSequence = "rejected_sequence";
    inline constexpr const char* kInsufficientFee = "rejected_insufficient_fee_funds";
    inline constexpr const char* kFeeGrant = "rejected_fee_grant";
    inline constexpr const char* kDecrypt = "rejected_decrypt";
    inline constexpr const char* kOutOfGas = "rejected_out_of_gas";
}  // namespace tx_code

struct TxResult {
    std::string code;
    std::string log;
    Gas gas_used{0};
    std::uint64_t height{0};
    Hash256 tx_hash{};
    //! One entry per message; execute/instantiate entries carry an encrypted "response" envelope.
    std::vector<Json> responses;

    [[nodiscard]] bool ok() const { return code == tx_code::kOk; }
    [[nodiscard]] bool rejected() const { return code.starts_with("rejected"); }
    [[nodiscard]] Json to_json() const;
    static TxResult from_json(const Json& j);
};

}  // namespace nfp::chain
