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
#include <string>

#include <nfp/chain/chain.hpp>
#include <nfp/client/client.hpp>

namespace nfp::node {

//! Network failure or an unexpected status from a node.
class HttpError : public Error {
  public:
    HttpError(int status, const std::string& what) : Error(what), status_{status} {}
    //! 0 when no response arrived.
    [[nodiscard]] int status() const { return status_; }

  private:
    int status_;
};

//! JSON-over-HTTP front end for a chain. Reads go straight to `chain`; broadcasts and
//! block production go through `writer`, which owns persistence and block policy.
//!
//!   GET  /chain                 {"chain_id","height","consensus_pubkey"}
//!   GET  /consensus_pubkey      {"pubkey"}
//!   GET  /account/<bech32>      {"address","balance","sequence"}
//!   GET  /block[?height=N]      block header, 404 if unknown
//!   POST /block                 closes a block, returns its header
//!   POST /broadcast             signed tx JSON -> {"tx": result}
//!   POST /query                 {"contract","envelope"} -> {"envelope"}
//!
//! Failures answer 4xx with {"error":{"kind","message"}}. Every response carries
//! Access-Control-Allow-Origin: * so a token document opened from disk can call it.
class HttpServer {
  public:
    HttpServer(chain::Chain& chain, client::ChainClient& writer);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    //! Binds and returns the port; port 0 picks a free one. Throws HttpError on failure.
    int bind(const std::string& host, int port);
    //! Blocks until stop().
    void listen();
    //! Starts serving on a background thread.
    void start();
    void stop();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

//! ChainClient speaking to an HttpServer.
class HttpClient final : public client::ChainClient {
  public:
    //! `base_url` like "http://127.0.0.1:26657".
    explicit HttpClient(const std::string& base_url);
    ~HttpClient() override;

    std::string chain_id() override;
    crypto::X25519Public consensus_pubkey() override;
    chain::Account account(const Address& addr) override;
    chain::TxResult broadcast(const chain::SignedTx& tx) override;
    crypto::Envelope query(const Address& contract, const crypto::Envelope& request) override;
    chain::BlockHeader produce_block() override;

    [[nodiscard]] std::uint64_t height();
    [[nodiscard]] std::optional<chain::BlockHeader> block(std::uint64_t height);

  private:
    chain::Json get(const std::string& path);
    chain::Json post(const std::string& path, const chain::Json& body);

    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace nfp::node
