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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nfp/chain/chain.hpp>
#include <nfp/crypto/hash.hpp>

namespace nfp::client {

using chain::Gas;
using chain::Json;
using chain::Uscrt;

//! A transaction the chain refused or could not apply, identified by its tx code.
class TxRejected : public Error {
  public:
    TxRejected(std::string code, const std::string& log) : Error(code + ": " + log), code_{std::move(code)} {}
    [[nodiscard]] const std::string& code() const { return code_; }

  private:
    std::string code_;
};

struct Wallet {
    crypto::PrivateKey key;
    crypto::PublicKey pub;
    Address address;

    static Wallet from_key(const crypto::PrivateKey& key);
    //! Deterministic key derived from an arbitrary label, for tests and scripted runs.
    static Wallet from_seed(std::string_view seed);
};

//! Transport to a chain: in-process or over HTTP.
class ChainClient {
  public:
    virtual ~ChainClient() = default;
    virtual std::string chain_id() = 0;
    virtual crypto::X25519Public consensus_pubkey() = 0;
    virtual chain::Account account(const Address& addr) = 0;
    virtual chain::TxResult broadcast(const chain::SignedTx& tx) = 0;
    //! Throws crypto::TransportError when the chain cannot decrypt the request.
    virtual crypto::Envelope query(const Address& contract, const crypto::Envelope& request) = 0;
    virtual chain::BlockHeader produce_block() = 0;
};

//! Client over a Chain living in this process. When `auto_block` is set every
//! broadcast is followed by a block.
class LocalClient final : public ChainClient {
  public:
    explicit LocalClient(chain::Chain& chain, bool auto_block = true) : chain_{chain}, auto_block_{auto_block} {}

    std::string chain_id() override { return chain_.chain_id(); }
    crypto::X25519Public consensus_pubkey() override { return chain_.consensus_pubkey(); }
    chain::Account account(const Address& addr) override { return chain_.account(addr); }
    chain::TxResult broadcast(const chain::SignedTx& tx) override;
    crypto::Envelope query(const Address& contract, const crypto::Envelope& request) override { return chain_.query(contract, request); }
    chain::BlockHeader produce_block() override { return chain_.produce_block(); }

  private:
    chain::Chain& chain_;
    bool auto_block_;
};

struct TxOptions {
    Uscrt fee{5'000};
    std::optional<Address> fee_granter;
};

//! A contract call inside a transaction. `msg` is the plaintext body.
struct ContractCall {
    enum class Kind { kExecute, kInstantiate };
    Kind kind{Kind::kExecute};
    Address contract;
    std::string code_id;
    std::string label;
    Json msg;
    Uscrt funds{0};
};

//! Outcome of a broadcast with every contract reply decrypted.
struct Outcome {
    chain::TxResult tx;
    //! One per message: {"ok":...}, {"error":{kind,message}} or {} for bank messages.
    std::vector<Json> replies;
    std::optional<Address> contract_address;
    //! Signed transaction as sent; also what a dry run produces.
    Json signed_tx;

    [[nodiscard]] bool ok() const { return tx.ok(); }
    //! The first contract reply's "ok" payload. Throws ContractError carrying the
    //! contract's error kind, or TxRejected for chain-level rejections.
    [[nodiscard]] const Json& data() const;
};

//! Builds, encrypts and signs transactions and queries on behalf of wallets.
//! Ephemeral envelope keys come from a seeded generator so runs are reproducible.
class Session {
  public:
    Session(ChainClient& client, Hash256 seed);

    [[nodiscard]] ChainClient& client() { return client_; }

    Outcome broadcast(const Wallet& signer, const std::vector<Json>& chain_msgs, const std::vector<ContractCall>& calls,
                      const TxOptions& opts = {}, bool dry_run = false);

    Outcome execute(const Wallet& signer, const Address& contract, const Json& msg, Uscrt funds = 0, const TxOptions& opts = {});
    Outcome instantiate(const Wallet& signer, const std::string& code_id, const std::string& label, const Json& msg, Uscrt funds = 0,
                        const TxOptions& opts = {});
    Outcome bank_send(const Wallet& signer, const Address& to, Uscrt amount, const TxOptions& opts = {});
    Outcome grant_fee_allowance(const Wallet& granter, const Address& grantee, Uscrt limit, std::optional<std::uint64_t> expiration,
                                const TxOptions& opts = {});

    //! Raw decrypted reply: {"ok":...} or {"error":...}.
    Json query_raw(const Address& contract, const Json& msg);
    //! The "ok" payload; throws ContractError on an error reply.
    Json query(const Address& contract, const Json& msg);

  private:
    crypto::X25519Secret next_secret();

    ChainClient& client_;
    crypto::Drbg drbg_;
    std::optional<crypto::X25519Public> consensus_;
};

//! Throws ContractError when `reply` is an error reply, returns its "ok" payload otherwise.
const Json& unwrap_reply(const Json& reply);

}  // namespace nfp::client
