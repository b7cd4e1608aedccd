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
#include <vector>

#include <nfp/client/client.hpp>
#include <nfp/contract/nfp_contract.hpp>
#include <nfp/crypto/hash.hpp>

namespace nfp::test {

using chain::Json;
using client::Wallet;

inline std::string tiny_svg(const std::string& tag) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\"><title>" + tag + "</title></svg>";
}

// A chain with one NFP contract and a cast of funded wallets, driven through the
// full signed and encrypted path.
struct NfpWorld {
    Wallet admin = Wallet::from_seed("admin");
    Wallet alice = Wallet::from_seed("alice");
    Wallet bob = Wallet::from_seed("bob");
    Wallet carol = Wallet::from_seed("carol");
    Wallet mallory = Wallet::from_seed("mallory");
    chain::Chain chain;
    client::LocalClient transport{chain};
    client::Session session{transport, crypto::sha256(as_bytes("nfp-world-session"))};
    Address contract;

    explicit NfpWorld(Json init = Json::object(), const std::string& seed = "nfp-world")
        : chain{make_config(seed), contract::code_registry()} {
        if (!init.contains("minters")) init["minters"] = Json::array({admin.address.str()});
        auto out = session.instantiate(admin, contract::kCodeId, "nfp", init);
        if (!out.ok()) throw Error("instantiate failed: " + out.tx.log);
        contract = *out.contract_address;
    }

    chain::ChainConfig make_config(const std::string& seed) {
        chain::ChainConfig cfg;
        cfg.seed = crypto::sha256(as_bytes(seed));
        for (const Wallet* w : {&admin, &alice, &bob, &carol, &mallory}) cfg.accounts.push_back({w->address, 100'000'000});
        return cfg;
    }

    client::Outcome exec(const Wallet& w, const Json& msg, chain::Uscrt funds = 0, const client::TxOptions& opts = {}) {
        return session.execute(w, contract, msg, funds, opts);
    }

    std::string mint(const Wallet& to, const std::string& svg = "") {
        auto out = exec(admin, {{"mint", {{"to", to.address.str()}, {"svg", svg.empty() ? tiny_svg(to.address.str()) : svg}}}});
        return out.data().at("token_id").get<std::string>();
    }

    contract::QueryPermit permit(const Wallet& w, std::vector<std::string> perms, const std::string& name = "p") {
        contract::PermitParams params{name, {contract}, std::move(perms), chain.chain_id()};
        return contract::sign_permit(params, w.key);
    }

    std::vector<std::string> all_permissions() const { return {"owner", "packages", "notifications", "game_state"}; }

    // Decrypted raw reply for a private query signed by `w`.
    Json ask(const Wallet& w, const Json& query) { return session.query_raw(contract, contract::with_permit(permit(w, all_permissions()), query)); }
    Json ask_anon(const Json& query) { return session.query_raw(contract, query); }

    static std::string error_kind(const Json& reply) { return reply.contains("error") ? reply["error"]["kind"].get<std::string>() : ""; }
    static std::string error_kind(const client::Outcome& out) {
        for (const auto& r : out.replies) {
            if (r.contains("error")) return r["error"]["kind"];
        }
        return out.tx.ok() ? "" : out.tx.code;
    }
};

}  // namespace nfp::test
