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

#include <filesystem>
#include <memory>
#include <mutex>

#include <nfp/chain/chain.hpp>
#include <nfp/client/client.hpp>

namespace nfp::node {

class JournalError : public Error {
  public:
    using Error::Error;
};

//! Another process holds the state file.
class LockError : public JournalError {
  public:
    using JournalError::JournalError;
};

//! A chain persisted as an append-only JSON-lines file:
//!   {"kind":"genesis","config":...}          first line
//!   {"kind":"tx","tx":...,"code":...,"hash":...}
//!   {"kind":"block","height":...,"hash":...}
//!   {"kind":"snapshot","state":...}          every `snapshot_interval` entries
//! Opening restores the newest snapshot and replays the entries after it, checking that
//! every recorded result and block hash comes out the same. The file is held under an
//! exclusive advisory lock for the lifetime of the object.
class Journal {
  public:
    static constexpr std::size_t kDefaultSnapshotInterval = 64;

    //! Throws JournalError if the file already exists, LockError if it is held.
    static std::unique_ptr<Journal> create(const std::filesystem::path& path, const chain::ChainConfig& config, chain::CodeRegistry codes);
    //! Throws JournalError on a missing or corrupt file, LockError if it is held.
    static std::unique_ptr<Journal> open(const std::filesystem::path& path, chain::CodeRegistry codes);

    ~Journal();
    Journal(const Journal&) = delete;
    Journal& operator=(const Journal&) = delete;

    [[nodiscard]] chain::Chain& chain() { return chain_; }
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

    //! Executes and records a transaction.
    chain::TxResult broadcast(const chain::SignedTx& tx);
    chain::BlockHeader produce_block();

    void set_snapshot_interval(std::size_t n) { snapshot_interval_ = n; }

  private:
    Journal(std::filesystem::path path, int fd, chain::Chain chain);
    void append(const chain::Json& entry);

    std::filesystem::path path_;
    int fd_;
    chain::Chain chain_;
    std::mutex write_mutex_;
    std::size_t since_snapshot_{0};
    std::size_t snapshot_interval_{kDefaultSnapshotInterval};
};

//! ChainClient over a journal; like LocalClient it closes a block after every accepted tx.
class JournalClient final : public client::ChainClient {
  public:
    explicit JournalClient(Journal& journal) : journal_{journal} {}

    std::string chain_id() override { return journal_.chain().chain_id(); }
    crypto::X25519Public consensus_pubkey() override { return journal_.chain().consensus_pubkey(); }
    chain::Account account(const Address& addr) override { return journal_.chain().account(addr); }
    chain::TxResult broadcast(const chain::SignedTx& tx) override;
    crypto::Envelope query(const Address& contract, const crypto::Envelope& request) override {
        return journal_.chain().query(contract, request);
    }
    chain::BlockHeader produce_block() override { return journal_.produce_block(); }

  private:
    Journal& journal_;
};

}  // namespace nfp::node
