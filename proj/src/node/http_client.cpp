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

#include <httplib.h>

namespace nfp::node {

using chain::Json;

struct HttpClient::Impl {
    std::string base_url;
    httplib::Client http;

    explicit Impl(const std::string& url) : base_url{url}, http{url} {
        http.set_connection_timeout(5);
        http.set_read_timeout(60);
    }
};

HttpClient::HttpClient(const std::string& base_url) : impl_{std::make_unique<Impl>(base_url)} {
    if (!impl_->http.is_valid()) throw HttpError(0, "invalid node url '" + base_url + "'");
}

HttpClient::~HttpClient() = default;

namespace {

    Json decode(const httplib::Result& res, const std::string& url, const std::string& path) {
        if (!res) throw HttpError(0, url + path + ": " + httplib::to_string(res.error()));
        Json body;
        try {
            body = Json::parse(res->body);
        } catch (const Json::parse_error&) {
            throw HttpError(res->status, url + path + ": HTTP " + std::to_string(res->status) + " with a non-JSON body");
        }
        if (res->status == 200) return body;
        const Json err = body.value("error", Json::object());
        // The node could not open the envelope; surface it exactly like a local chain would.
        if (err.value("kind", "") == "transport") throw crypto::TransportError();
        throw HttpError(res->status, url + path + ": " + err.value("kind", "error") + ": " + err.value("message", res->body));
    }

}  // namespace

Json HttpClient::get(const std::string& path) { return decode(impl_->http.Get(path), impl_->base_url, path); }

Json HttpClient::post(const std::string& path, const Json& body) {
    return decode(impl_->http.Post(path, body.dump(), "application/json"), impl_->base_url, path);
}

std::string HttpClient::chain_id() { return get("/chain").at("chain_id"); }

std::uint64_t HttpClient::height() { return get("/chain").at("height"); }

crypto::X25519Public HttpClient::consensus_pubkey() {
    return crypto::X25519Public{fixed_from_hex<32>(get("/consensus_pubkey").at("pubkey").get<std::string>())};
}

chain::Account HttpClient::account(const Address& addr) {
    const Json j = get("/account/" + addr.str());
    return {Address::parse(j.at("address").get<std::string>()), j.at("balance"), j.at("sequence")};
}

chain::TxResult HttpClient::broadcast(const chain::SignedTx& tx) { return chain::TxResult::from_json(post("/broadcast", tx.to_json()).at("tx")); }

crypto::Envelope HttpClient::query(const Address& contract, const crypto::Envelope& request) {
    const Json reply = post("/query", {{"contract", contract.str()}, {"envelope", request.hex()}});
    return crypto::Envelope::parse_hex(reply.at("envelope").get<std::string>());
}

chain::BlockHeader HttpClient::produce_block() { return post("/block", Json::object()).get<chain::BlockHeader>(); }

std::optional<chain::BlockHeader> HttpClient::block(std::uint64_t height) {
    try {
        return get("/block?height=" + std::to_string(height)).get<chain::BlockHeader>();
    } catch (const HttpError& e) {
        if (e.status() == 404) return std::nullopt;
        throw;
    }
}

}  // namespace nfp::node
