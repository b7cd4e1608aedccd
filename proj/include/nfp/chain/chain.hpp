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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nfp/chain/contract.hpp>
#include <nfp/chain/store.hpp>
#include <nfp/chain/tx.hpp>
#include <nfp/chain/types.hpp>
#include <nfp/crypto/envelope.hpp>

namespace nfp::chain {

using CodeRegistry = std::map<std::string, std::shared_ptr<Contract>>;

struct ContractInfo {
    Address address;
    std::string code_id;
    std::string label;
    Address creator;
};

//! Single-node confidential chain. Executions are serialized; queries take a shared
//! lock and may run concurrently with each other.
class Chain {
  public:
    //! Genesis. Throws Error on duplicate genesis addresses.
    Chain(ChainConfig config, CodeRegistry codes);
    ~Chain();
    Chain(Chain&&) noexcept;
    Chain& operator=(Chain&&) noexcept;

    [[nodiscard]] const ChainConfig& config() const;
    [[nodiscard]] const std::string& chain_id() const { return config().chain_id; }
    [[nodiscard]] crypto::X25519Public consensus_pubkey() const;

    [[nodiscard]] std::uint64_t height() const;
    [[nodiscard]] BlockHeader last_block() const;
    [[nodiscard]] std::optional<BlockHeader> block(std::uint64_t height) const;

    [[nodiscard]] Account account(const Address& addr) const;
    [[nodiscard]] Uscrt balance(const Address& addr) const { return account(addr).balance; }
    [[nodiscard]] std::optional<FeeGrant> fee_grant(const Address& granter, const Address& grantee) const;
    //! Sum of all balances, contracts included.
    [[nodiscard]] Uscrt total_supply() const;
    [[nodiscard]] Uscrt burned_fees() const;
    [[nodiscard]] std::vector<ContractInfo> contracts() const;

    TxResult broadcast_execute(const SignedTx& tx);

    //! Read-only dispatch. Contract errors come back inside the encrypted response;
    //! an undecryptable request throws crypto::TransportError.
    [[nodiscard]] crypto::Envelope query(const Address& contract, const crypto::Envelope& request) const;

    BlockHeader produce_block();

    [[nodiscard]] static Hash256 compute_block_hash(const Hash256& prev, std::uint64_t height, const std::vector<Hash256>& tx_hashes);

    //! Trusted in-process execution that skips signatures, fees and envelopes but runs
    //! the same metering, storage sealing and rollback. For harnesses and tools only.
    Json execute_trusted(const Address& sender, const Address& contract, const Json& msg, Uscrt funds = 0, Gas* gas_used = nullptr);
    Address instantiate_trusted(const Address& sender, const std::string& code_id, const std::string& label, const Json& msg,
                                Uscrt funds = 0);
    [[nodiscard]] Json query_trusted(const Address& contract, const Json& msg) const;

    //! Copy of the encrypted store, for confidentiality checks.
    [[nodiscard]] SealedStore raw_storage_dump() const;
    [[nodiscard]] StateKey contract_state_key(const Address& contract) const;

    [[nodiscard]] Json snapshot() const;
    static Chain restore(const Json& snapshot, CodeRegistry codes);

  private:
    struct Impl;
    explicit Chain(std::unique_ptr<Impl> impl);
    std::unique_ptr<Impl> impl_;
};

}  // namespace nfp::chain
