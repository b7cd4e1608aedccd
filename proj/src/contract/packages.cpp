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

#include <algorithm>

#include <nfp/codec/gzip.hpp>

#include "state.hpp"

namespace nfp::contract::detail {

namespace {

    // Package ids may contain '/', so the serial sits before the id in version keys.
    std::string meta_key(const std::string& id) { return "pkgmeta:" + id; }
    std::string header_key(const std::string& id, std::uint64_t serial) { return "pkgver:" + std::to_string(serial) + ":" + id; }
    std::string data_key(const std::string& id, std::uint64_t serial) { return "pkgdata:" + std::to_string(serial) + ":" + id; }

    const std::vector<std::string> kAccessSpecifiers{"public", "owners", "cleared", "token"};

    std::vector<std::string> parse_tags(const Json& args) {
        std::vector<std::string> tags;
        for (const auto& t : args.value("tags", Json::array())) {
            const auto tag = t.get<std::string>();
            if (tag.empty()) throw chain::invalid("tags must be non-empty");
            if (std::find(tags.begin(), tags.end(), tag) == tags.end()) tags.push_back(tag);
        }
        return tags;
    }

    std::uint64_t append_version(State& s, const std::string& id, Json meta, ByteView data, const std::string& encoding,
                                 const std::vector<std::string>& tags, const Json& metadata) {
        auto& ctx = s.ctx();
        const bool is_new = meta.at("latest_serial").get<std::uint64_t>() == 0;
        const std::uint64_t serial = meta.at("latest_serial").get<std::uint64_t>() + 1;
        meta["latest_serial"] = serial;
        for (const auto& t : tags) meta["tags"][t] = serial;
        ctx.set_json(meta_key(id), meta);
        ctx.set_json(header_key(id, serial), Json{{"serial", serial},
                                                  {"content_encoding", encoding},
                                                  {"tags", tags},
                                                  {"metadata", metadata},
                                                  {"uploaded_height", ctx.env().height},
                                                  {"size", data.size()}});
        ctx.set(data_key(id, serial), data);
        if (is_new) {
            Json index = ctx.get_json("pkg_index").value_or(Json::array());
            index.push_back(id);
            ctx.set_json("pkg_index", index);
        }
        return serial;
    }

    Json new_meta(const std::string& id, const std::string& access, const Json& bound_token, bool reset_on_transfer) {
        return Json{{"package_id", id},
                    {"access", access},
                    {"bound_token", bound_token},
                    {"reset_on_transfer", reset_on_transfer},
                    {"latest_serial", 0},
                    {"tags", Json::object()}};
    }

    Json exec_upload(State& s, const Json& args) {
        auto& ctx = s.ctx();
        if (!s.is_admin(ctx.sender())) throw chain::unauthorized();
        const std::string id = str_field(args, "package_id");
        if (id.empty() || id.size() > kMaxPackageIdBytes) throw chain::invalid("package id must be 1.." + std::to_string(kMaxPackageIdBytes) + " bytes");
        if (id.starts_with(kTokenPackagePrefix)) throw chain::invalid("the token/ prefix is reserved for contract-published packages");
        const std::string access = str_field(args, "access");
        if (std::find(kAccessSpecifiers.begin(), kAccessSpecifiers.end(), access) == kAccessSpecifiers.end()) {
            throw chain::invalid("unknown access specifier '" + access + "'");
        }
        if (access == "token") throw chain::ContractError("unauthorized", "token packages are published only by contract logic");

        const std::string encoding = args.value("content_encoding", std::string{"none"});
        if (encoding != "none" && encoding != "gzip") throw chain::invalid("content_encoding must be none or gzip");
        const Bytes data = from_base64(str_field(args, "data"));
        if (encoding == "gzip") {
            try {
                (void)codec::gzip_decompress(data);
            } catch (const DecodingError& e) {
                throw chain::invalid(std::string{"gzip payload does not decode: "} + e.what());
            }
        }
        Json metadata = args.value("metadata", Json::object());
        if (!metadata.is_object()) throw chain::invalid("metadata must be an object of strings");
        for (const auto& [k, v] : metadata.items()) {
            if (!v.is_string()) throw chain::invalid("metadata values must be strings");
        }
        const bool reset = args.value("reset_on_transfer", false);

        auto meta = ctx.get_json(meta_key(id));
        if (meta) {
            if (meta->at("access") != access) throw chain::invalid("access specifier of an existing package cannot change");
            if (args.contains("reset_on_transfer") && meta->at("reset_on_transfer").get<bool>() != reset) {
                throw chain::invalid("reset_on_transfer of an existing package cannot change");
            }
        } else {
            meta = new_meta(id, access, nullptr, reset);
        }
        const auto serial = append_version(s, id, *meta, data, encoding, parse_tags(args), metadata);
        return Json{{"package_id", id}, {"serial", serial}};
    }

    Json exec_set_cleared(State& s, const Json& args) {
        auto& ctx = s.ctx();
        if (!s.is_admin(ctx.sender())) throw chain::unauthorized();
        const std::string token_id = str_field(args, "token_id");
        const std::string id = str_field(args, "package_id");
        auto meta = ctx.get_json(meta_key(id));
        if (!meta) throw chain::not_found("package");
        if (meta->at("access") != "cleared") throw chain::invalid("package does not use the cleared specifier");
        auto token = s.token(token_id);
        if (!token) throw chain::not_found("token");
        auto& cleared = (*token)["cleared"];
        if (std::find(cleared.begin(), cleared.end(), Json(id)) == cleared.end()) {
            cleared.push_back(id);
            ctx.set_json("token/" + token_id, *token);
        }
        return Json::object();
    }

    bool may_access(State& s, const Viewer& v, const Json& meta) {
        const auto access = meta.at("access").get<std::string>();
        if (access == "public") return true;
        if (!v.has(permission::kPackages)) return false;
        const Address& who = *v.address;
        const auto tokens = s.accessible_tokens(who);
        if (access == "token") return tokens.contains(meta.at("bound_token").get<std::string>());
        if (s.is_admin(who)) return true;
        if (access == "owners") return !tokens.empty();
        const auto id = meta.at("package_id").get<std::string>();
        for (const auto& t : tokens) {
            const auto token = s.token(t);
            const auto& cleared = token->at("cleared");
            if (std::find(cleared.begin(), cleared.end(), Json(id)) != cleared.end()) return true;
        }
        return false;
    }

}  // namespace

std::uint64_t State::publish_token_package(const std::string& token_id, const std::string& name, ByteView data,
                                           const std::vector<std::string>& tags) {
    const std::string id = std::string{kTokenPackagePrefix} + token_id + "/" + name;
    auto meta = ctx_.get_json(meta_key(id));
    if (!meta) meta = new_meta(id, "token", token_id, false);
    return append_version(*this, id, *meta, data, "none", tags, Json::object());
}

void State::reset_cleared_on_transfer(const std::string& token_id) {
    auto token = this->token(token_id);
    Json kept = Json::array();
    for (const auto& id : token->at("cleared")) {
        const auto meta = ctx_.get_json(meta_key(id.get<std::string>()));
        if (!meta || !meta->at("reset_on_transfer").get<bool>()) kept.push_back(id);
    }
    if (kept.size() != token->at("cleared").size()) {
        (*token)["cleared"] = kept;
        ctx_.set_json("token/" + token_id, *token);
    }
}

Json execute_package(State& s, const std::string& method, const Json& args) {
    if (method == "upload_package") return exec_upload(s, args);
    return exec_set_cleared(s, args);
}

Json query_package(State& s, const Viewer& viewer, const std::string& method, const Json& args) {
    auto& ctx = s.ctx();
    if (method == "list_packages") {
        Json out = Json::array();
        for (const auto& id : ctx.get_json("pkg_index").value_or(Json::array())) {
            const auto meta = *ctx.get_json(meta_key(id.get<std::string>()));
            if (!may_access(s, viewer, meta)) continue;
            Json tags = Json::array();
            for (const auto& [t, serial] : meta.at("tags").items()) tags.push_back(t);
            out.push_back(Json{{"package_id", id}, {"access", meta.at("access")}, {"latest_serial", meta.at("latest_serial")}, {"tags", tags}});
        }
        return Json{{"packages", out}};
    }

    const std::string id = str_field(args, "package_id");
    const auto meta = ctx.get_json(meta_key(id));
    if (!meta) {
        // Only the admin learns that an id does not exist.
        if (viewer.has(permission::kPackages) && s.is_admin(*viewer.address)) throw chain::not_found("package");
        throw chain::unauthorized();
    }
    if (!may_access(s, viewer, *meta)) throw chain::unauthorized();

    std::uint64_t serial = 0;
    if (args.contains("serial") && !args.at("serial").is_null()) {
        serial = args.at("serial").get<std::uint64_t>();
        if (serial == 0 || serial > meta->at("latest_serial").get<std::uint64_t>()) throw chain::not_found("package version");
    } else if (args.contains("tag") && !args.at("tag").is_null()) {
        const auto tag = str_field(args, "tag");
        if (!meta->at("tags").contains(tag)) throw chain::not_found("tag");
        serial = meta->at("tags").at(tag).get<std::uint64_t>();
    } else {
        serial = meta->at("latest_serial").get<std::uint64_t>();
    }
    Json out = *ctx.get_json(header_key(id, serial));
    out["package_id"] = id;
    out["access"] = meta->at("access");
    out["data"] = to_base64(*ctx.get(data_key(id, serial)));
    return out;
}

}  // namespace nfp::contract::detail
