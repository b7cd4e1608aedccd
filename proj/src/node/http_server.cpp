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

#include <nfp/node/http.hpp>

#include <mutex>
#include <thread>

#include <httplib.h>

namespace nfp::node {

namespace {

    using chain::Json;

    void reply(httplib::Response& res, int status, const Json& body) {
        res.status = status;
        res.set_content(body.dump(), "application/json");
    }

    void fail(httplib::Response& res, int status, const std::string& kind, const std::string& message) {
        reply(res, status, {{"error", {{"kind", kind}, {"message", message}}}});
    }

    Json parse_body(const httplib::Request& req) {
        Json j = Json::parse(req.body);
        if (!j.is_object()) throw DecodingError("request body must be a JSON object");
        return j;
    }

}  // namespace

struct HttpServer::Impl {
    chain::Chain& chain;
    client::ChainClient& writer;
    std::mutex write_mutex;  // keeps broadcast and its follow-up block adjacent
    httplib::Server server;
    std::thread thread;

    Impl(chain::Chain& c, client::ChainClient& w) : chain{c}, writer{w} { routes(); }

    void routes() {
        server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                    {"Access-Control-Allow-Headers", "Content-Type"},
                                    {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
        server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

        // Malformed input of any kind is the caller's problem: 400, never a dropped connection.
        server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
            try {
                std::rethrow_exception(ep);
            } catch (const crypto::TransportError& e) {
                fail(res, 400, "transport", e.what());
            } catch (const Json::exception& e) {
                fail(res, 400, "malformed", e.what());
            } catch (const DecodingError& e) {
                fail(res, 400, "malformed", e.what());
            } catch (const std::logic_error& e) {  // std::stoull and friends
                fail(res, 400, "malformed", e.what());
            } catch (const std::exception& e) {
                fail(res, 500, "internal", e.what());
            }
        });

        server.Get("/chain", [this](const httplib::Request&, httplib::Response& res) {
            reply(res, 200, {{"chain_id", chain.chain_id()}, {"height", chain.height()}, {"consensus_pubkey", to_hex(chain.consensus_pubkey().bytes())}});
        });
        server.Get("/consensus_pubkey", [this](const httplib::Request&, httplib::Response& res) {
            reply(res, 200, {{"pubkey", to_hex(chain.consensus_pubkey().bytes())}});
        });
        server.Get(R"(/account/([0-9a-z]+))", [this](const httplib::Request& req, httplib::Response& res) {
            const auto acct = chain.account(Address::parse(req.matches[1].str()));
            reply(res, 200, {{"address", acct.address.str()}, {"balance", acct.balance}, {"sequence", acct.sequence}});
        });
        server.Get("/block", [this](const httplib::Request& req, httplib::Response& res) {
            if (!req.has_param("height")) return reply(res, 200, chain.last_block());
            const auto h = std::stoull(req.get_param_value("height"));
            const auto b = chain.block(h);
            if (!b) return fail(res, 404, "not_found", "no block at height " + std::to_string(h));
            reply(res, 200, *b);
        });
        server.Post("/block", [this](const httplib::Request&, httplib::Response& res) {
            std::lock_guard lock{write_mutex};
            reply(res, 200, writer.produce_block());
        });
        server.Post("/broadcast", [this](const httplib::Request& req, httplib::Response& res) {
            const auto tx = chain::SignedTx::from_json(parse_body(req));
            std::lock_guard lock{write_mutex};
            reply(res, 200, {{"tx", writer.broadcast(tx).to_json()}});
        });
        server.Post("/query", [this](const httplib::Request& req, httplib::Response& res) {
            const Json body = parse_body(req);
            const auto contract = chain::address_field(body, "contract");
            const auto request = crypto::Envelope::parse_hex(body.at("envelope").get<std::string>());
            reply(res, 200, {{"envelope", chain.query(contract, request).hex()}});
        });
    }
};

HttpServer::HttpServer(chain::Chain& chain, client::ChainClient& writer) : impl_{std::make_unique<Impl>(chain, writer)} {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw HttpError(0, "cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::start() {
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
}

void HttpServer::stop() {
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace nfp::node
