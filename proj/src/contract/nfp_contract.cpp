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

#include <nfp/contract/nfp_contract.hpp>

#include <algorithm>

#include "state.hpp"

namespace nfp::contract {

using namespace detail;

bool is_delegable(std::string_view method) { return std::find(kDelegableMethods.begin(), kDelegableMethods.end(), method) != kDelegableMethods.end(); }

chain::CodeRegistry code_registry() { return {{kCodeId, std::make_shared<NfpContract>()}}; }

namespace detail {

    std::string str_field(const Json& args, const char* key) {
        if (!args.contains(key) || !args.at(key).is_string()) throw chain::invalid(std::string{"missing string field '"} + key + "'");
        return args.at(key).get<std::string>();
    }

    namespace {

        std::string token_key(const std::string& id) { return "token/" + id; }
        std::string owner_key(const Address& a) { return "owner/" + a.str(); }
        std::string token_grant_key(const std::string& id, const Address& d) { return "dg/t/" + id + "/" + d.str(); }
        std::string token_grant_list_key(const std::string& id) { return "dg/tl/" + id; }
        std::string owner_grant_key(const Address& o, const Address& d) { return "dg/o/" + o.str() + "/" + d.str(); }
        std::string delegations_key(const Address& d) { return "dg/of/" + d.str(); }
        std::string revoked_key(const Address& a, const std::string& name) { return "revoked/" + a.str() + "/" + name; }

        bool contains(const std::vector<std::string>& v, std::string_view s) { return std::find(v.begin(), v.end(), s) != v.end(); }

        Json list_or_empty(ContractContext& ctx, const std::string& key) { return ctx.get_json(key).value_or(Json::array()); }

        void index_delegation(ContractContext& ctx, const Address& delegate, const Json& entry, bool add) {
            Json list = list_or_empty(ctx, delegations_key(delegate));
            Json out = Json::array();
            for (const auto& e : list) {
                if (e != entry) out.push_back(e);
            }
            if (add) out.push_back(entry);
            if (out.empty()) {
                ctx.remove(delegations_key(delegate));
            } else {
                ctx.set_json(delegations_key(delegate), out);
            }
        }

    }  // namespace

    Json State::config() { return *ctx_.get_json("config"); }

    bool State::is_admin(const Address& a) { return config().at("admin").get<std::string>() == a.str(); }

    std::optional<Json> State::token(const std::string& token_id) { return ctx_.get_json(token_key(token_id)); }

    Address State::owner_of(const std::string& token_id) {
        auto t = token(token_id);
        if (!t) throw chain::unauthorized();
        return chain::address_field(*t, "owner");
    }

    std::vector<std::string> State::tokens_of(const Address& owner) {
        return list_or_empty(ctx_, owner_key(owner)).get<std::vector<std::string>>();
    }

    void State::set_tokens_of(const Address& owner, const std::vector<std::string>& ids) {
        if (ids.empty()) {
            ctx_.remove(owner_key(owner));
        } else {
            ctx_.set_json(owner_key(owner), ids);
        }
    }

    std::optional<std::vector<std::string>> State::token_grant(const std::string& token_id, const Address& delegate) {
        auto g = ctx_.get_json(token_grant_key(token_id, delegate));
        if (!g) return std::nullopt;
        return g->at("methods").get<std::vector<std::string>>();
    }

    std::optional<std::vector<std::string>> State::owner_grant(const Address& owner, const Address& delegate) {
        auto g = ctx_.get_json(owner_grant_key(owner, delegate));
        if (!g) return std::nullopt;
        return g->at("methods").get<std::vector<std::string>>();
    }

    Address State::authorize(const std::string& token_id, std::string_view method) {
        const Address owner = owner_of(token_id);
        const Address& sender = ctx_.sender();
        if (sender == owner) return owner;
        if (auto g = token_grant(token_id, sender); g && contains(*g, method)) return owner;
        if (auto g = owner_grant(owner, sender); g && contains(*g, method)) return owner;
        throw chain::unauthorized();
    }

    Address State::authorize_owner(const std::string& token_id) {
        const Address owner = owner_of(token_id);
        if (ctx_.sender() != owner) throw chain::unauthorized();
        return owner;
    }

    bool State::can_view(const std::string& token_id, const Address& who) {
        auto t = token(token_id);
        if (!t) return false;
        const Address owner = chain::address_field(*t, "owner");
        return who == owner || token_grant(token_id, who) || owner_grant(owner, who);
    }

    std::set<std::string> State::accessible_tokens(const Address& who) {
        std::set<std::string> out;
        for (const auto& id : tokens_of(who)) out.insert(id);
        for (const auto& e : list_or_empty(ctx_, delegations_key(who))) {
            if (e.contains("token_id")) {
                out.insert(e.at("token_id").get<std::string>());
            } else {
                for (const auto& id : tokens_of(chain::address_field(e, "owner"))) out.insert(id);
            }
        }
        return out;
    }

    void State::revoke_token_grants(const std::string& token_id) {
        for (const auto& d : list_or_empty(ctx_, token_grant_list_key(token_id))) {
            const Address delegate = Address::parse(d.get<std::string>());
            ctx_.remove(token_grant_key(token_id, delegate));
            index_delegation(ctx_, delegate, Json{{"token_id", token_id}}, false);
        }
        ctx_.remove(token_grant_list_key(token_id));
    }

    std::uint64_t State::push_notification(const std::string& token_id, const Json& payload) {
        const std::string count_key = "notif/" + token_id + "/count";
        const std::uint64_t seq = ctx_.get_json(count_key).value_or(Json(0)).get<std::uint64_t>() + 1;
        ctx_.set_json(count_key, seq);
        ctx_.set_json("notif/" + token_id + "/" + std::to_string(seq), Json{{"seq", seq}, {"height", ctx_.env().height}, {"payload", payload}});
        return seq;
    }

    Viewer authenticate(ContractContext& ctx, const Json& permit_json) {
        QueryPermit permit = [&] {
            try {
                return QueryPermit::from_json(permit_json);
            } catch (const std::exception&) {
                throw chain::unauthorized();
            }
        }();
        const auto& p = permit.params;
        if (p.chain_id != ctx.env().chain_id) throw chain::unauthorized();
        if (std::find(p.allowed_contracts.begin(), p.allowed_contracts.end(), ctx.env().contract) == p.allowed_contracts.end()) {
            throw chain::unauthorized();
        }
        if (!verify_permit_signature(permit)) throw chain::unauthorized();
        const Address signer = permit.signer();
        if (ctx.get(revoked_key(signer, p.permit_name))) throw chain::unauthorized();
        Viewer v;
        v.address = signer;
        for (const auto& perm : p.permissions) {
            if (is_known_permission(perm)) v.permissions.insert(perm);
        }
        return v;
    }

}  // namespace detail

namespace {

    Json exec_mint(State& s, const Json& args) {
        auto& ctx = s.ctx();
        const Json cfg = s.config();
        const Address& sender = ctx.sender();
        const auto minters = cfg.at("minters").get<std::vector<std::string>>();
        const bool is_minter = std::find(minters.begin(), minters.end(), sender.str()) != minters.end();
        if (!is_minter) {
            if (cfg.at("mint_price").is_null()) throw chain::unauthorized();
            if (ctx.env().funds < cfg.at("mint_price").get<Uscrt>()) throw ContractError("insufficient_payment", "payment below mint price");
        }
        const std::string svg = str_field(args, "svg");
        if (svg.empty()) throw chain::invalid("svg payload is empty");
        const Address to = args.contains("to") ? chain::address_field(args, "to") : sender;

        const std::uint64_t n = ctx.get_json("num_tokens").value_or(Json(0)).get<std::uint64_t>() + 1;
        const std::string id = std::to_string(n);
        if (args.contains("expected_token_id") && str_field(args, "expected_token_id") != id) {
            throw ContractError("conflict", "next token id is " + id);
        }
        ctx.set_json("num_tokens", n);
        ctx.set_json(token_key(id), Json{{"token_id", id}, {"owner", to.str()}, {"minted_height", ctx.env().height}, {"cleared", Json::array()}});
        ctx.set("token_svg/" + id, as_bytes(svg));
        auto owned = s.tokens_of(to);
        owned.push_back(id);
        s.set_tokens_of(to, owned);
        s.push_notification(id, Json{{"event", "minted"}, {"owner", to.str()}});
        return Json{{"token_id", id}};
    }

    Json exec_transfer(State& s, const Json& args) {
        const std::string id = str_field(args, "token_id");
        const Address from = s.authorize_owner(id);
        const Address to = chain::address_field(args, "recipient");
        auto& ctx = s.ctx();
        Json t = *s.token(id);
        t["owner"] = to.str();
        ctx.set_json(token_key(id), t);
        auto from_list = s.tokens_of(from);
        std::erase(from_list, id);
        s.set_tokens_of(from, from_list);
        auto to_list = s.tokens_of(to);
        to_list.push_back(id);
        s.set_tokens_of(to, to_list);
        s.revoke_token_grants(id);
        s.reset_cleared_on_transfer(id);
        s.push_notification(id, Json{{"event", "transferred"}, {"from", from.str()}, {"to", to.str()}});
        return Json::object();
    }

    std::optional<std::string> scope_token(const Json& args) {
        if (!args.contains("token_id") || args.at("token_id").is_null()) return std::nullopt;
        return str_field(args, "token_id");
    }

    Json exec_approve_delegate(State& s, const Json& args) {
        auto& ctx = s.ctx();
        const Address delegate = chain::address_field(args, "delegate");
        if (delegate == ctx.sender()) throw chain::invalid("cannot delegate to yourself");
        const auto methods = args.at("methods").get<std::vector<std::string>>();
        if (methods.empty()) throw chain::invalid("methods must not be empty");
        for (const auto& m : methods) {
            if (!is_delegable(m)) throw chain::invalid("method '" + m + "' cannot be delegated");
        }
        const Json grant{{"methods", methods}};
        if (auto id = scope_token(args)) {
            s.authorize_owner(*id);
            ctx.set_json(token_grant_key(*id, delegate), grant);
            Json list = list_or_empty(ctx, token_grant_list_key(*id));
            if (std::find(list.begin(), list.end(), Json(delegate.str())) == list.end()) list.push_back(delegate.str());
            ctx.set_json(token_grant_list_key(*id), list);
            index_delegation(ctx, delegate, Json{{"token_id", *id}}, true);
        } else {
            ctx.set_json(owner_grant_key(ctx.sender(), delegate), grant);
            index_delegation(ctx, delegate, Json{{"owner", ctx.sender().str()}}, true);
        }
        return Json::object();
    }

    Json exec_revoke_delegate(State& s, const Json& args) {
        auto& ctx = s.ctx();
        const Address delegate = chain::address_field(args, "delegate");
        if (auto id = scope_token(args)) {
            s.authorize_owner(*id);
            ctx.remove(token_grant_key(*id, delegate));
            Json list = list_or_empty(ctx, token_grant_list_key(*id));
            Json out = Json::array();
            for (const auto& d : list) {
                if (d != delegate.str()) out.push_back(d);
            }
            ctx.set_json(token_grant_list_key(*id), out);
            index_delegation(ctx, delegate, Json{{"token_id", *id}}, false);
        } else {
            ctx.remove(owner_grant_key(ctx.sender(), delegate));
            index_delegation(ctx, delegate, Json{{"owner", ctx.sender().str()}}, false);
        }
        return Json::object();
    }

    Json exec_kv_put(State& s, const Json& args) {
        const std::string id = str_field(args, "token_id");
        s.authorize(id, "kv_put");
        const std::string key = str_field(args, "key");
        const std::string value = str_field(args, "value");
        if (key.empty() || key.size() > kMaxKvKeyBytes) throw chain::invalid("key must be 1.." + std::to_string(kMaxKvKeyBytes) + " bytes");
        if (value.size() > kMaxKvValueBytes) throw chain::invalid("value exceeds " + std::to_string(kMaxKvValueBytes) + " bytes");
        s.ctx().set("kv/" + id + "/" + key, as_bytes(value));
        return Json::object();
    }

    Json exec_revoke_permit(State& s, const Json& args) {
        s.ctx().set(revoked_key(s.ctx().sender(), str_field(args, "permit_name")), as_bytes("1"));
        return Json::object();
    }

    // Private token-level queries. Anything short of full authorization is "unauthorized".
    Json query_token(State& s, const Viewer& v, const std::string& method, const Json& args) {
        auto& ctx = s.ctx();
        if (method == "tokens_of") {
            if (!v.has(permission::kOwner)) throw chain::unauthorized();
            return Json{{"tokens", s.tokens_of(*v.address)}};
        }
        const std::string id = str_field(args, "token_id");
        const char* needed = method == "fetch_notifications" ? permission::kNotifications : permission::kOwner;
        if (!v.has(needed) || !s.can_view(id, *v.address)) throw chain::unauthorized();

        if (method == "owner_of") return Json{{"owner", s.owner_of(id).str()}};
        if (method == "token_info") return *s.token(id);
        if (method == "token_svg") return Json{{"svg", to_string(*ctx.get("token_svg/" + id))}};
        if (method == "kv_get") {
            auto value = ctx.get("kv/" + id + "/" + str_field(args, "key"));
            if (!value) throw chain::not_found("key");
            return Json{{"value", to_string(*value)}};
        }
        // fetch_notifications
        const std::uint64_t since = args.value("since", std::uint64_t{0});
        const std::uint64_t latest = ctx.get_json("notif/" + id + "/count").value_or(Json(0)).get<std::uint64_t>();
        Json list = Json::array();
        for (std::uint64_t seq = since + 1; seq <= latest && list.size() < kMaxNotificationsPerFetch; ++seq) {
            list.push_back(*ctx.get_json("notif/" + id + "/" + std::to_string(seq)));
        }
        return Json{{"token_id", id}, {"notifications", list}, {"latest", latest}};
    }

    // Splits {"method":{args}} into its parts.
    std::pair<std::string, Json> split(const Json& msg) {
        if (!msg.is_object() || msg.size() != 1) throw chain::invalid("message must have exactly one top-level key");
        const auto it = msg.begin();
        const Json args = it.value().is_null() ? Json::object() : it.value();
        if (!args.is_object()) throw chain::invalid("method arguments must be an object");
        return {it.key(), args};
    }

}  // namespace

Json NfpContract::instantiate(chain::ContractContext& ctx, const Json& msg) {
    const Address admin = msg.contains("admin") ? chain::address_field(msg, "admin") : ctx.sender();
    Json minters = Json::array();
    for (const auto& m : msg.value("minters", Json::array())) minters.push_back(Address::parse(m.get<std::string>()).str());
    if (minters.empty()) throw chain::invalid("at least one minter is required");
    Json price = nullptr;
    if (msg.contains("mint_price") && !msg.at("mint_price").is_null()) price = msg.at("mint_price").get<Uscrt>();
    ctx.set_json("config", Json{{"admin", admin.str()}, {"minters", minters}, {"mint_price", price}});
    ctx.set_json("num_tokens", 0);
    return Json{{"admin", admin.str()}};
}

Json NfpContract::execute(chain::ContractContext& ctx, const Json& msg) {
    const auto [method, args] = split(msg);
    State s{ctx};
    if (method == "mint") return exec_mint(s, args);
    if (method == "transfer") return exec_transfer(s, args);
    if (method == "approve_delegate") return exec_approve_delegate(s, args);
    if (method == "revoke_delegate") return exec_revoke_delegate(s, args);
    if (method == "revoke_permit") return exec_revoke_permit(s, args);
    if (method == "kv_put") return exec_kv_put(s, args);
    if (method == "upload_package" || method == "set_cleared") return execute_package(s, method, args);
    if (method == "new_match" || method == "join_match" || method == "submit_setup" || method == "attack") return execute_game(s, method, args);
    throw chain::invalid("unknown method '" + method + "'");
}

Json NfpContract::query(chain::ContractContext& ctx, const Json& msg) {
    auto [method, args] = split(msg);
    State s{ctx};
    Viewer viewer;
    if (method == "with_permit") {
        viewer = authenticate(ctx, args.at("permit"));
        std::tie(method, args) = split(args.at("query"));
    }
    if (method == "config") {
        Json cfg = s.config();
        return cfg;
    }
    if (method == "num_tokens") return Json{{"count", ctx.get_json("num_tokens")->get<std::uint64_t>()}};
    if (method == "owner_of" || method == "token_info" || method == "token_svg" || method == "tokens_of" || method == "kv_get" ||
        method == "fetch_notifications") {
        return query_token(s, viewer, method, args);
    }
    if (method == "get_package" || method == "list_packages") return query_package(s, viewer, method, args);
    if (method == "match_state" || method == "list_open_matches") return query_game(s, viewer, method, args);
    throw chain::invalid("unknown query '" + method + "'");
}

}  // namespace nfp::contract
