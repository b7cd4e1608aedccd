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

#include <nfp/svg/svg.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <functional>
#include <memory>
#include <regex>
#include <set>
#include <sstream>

#include <expat.h>
#include <json.hpp>

#include <nfp/crypto/hash.hpp>

namespace nfp::svg {

namespace {

    constexpr char kNsSep = '|';
    constexpr std::string_view kSlotMetadata = "nfp:metadata";
    constexpr std::string_view kSlotBootloader = "nfp:bootloader";
    constexpr std::string_view kTraitPrefix = "trait:";

    std::string nfp_name(std::string_view local) { return std::string{kNfpNamespace} + kNsSep + std::string{local}; }

    std::string_view local_name(std::string_view qualified) {
        const auto pos = qualified.rfind(kNsSep);
        return pos == std::string_view::npos ? qualified : qualified.substr(pos + 1);
    }

    std::string trim(std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return std::string{s};
    }

    std::string lower(std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return s;
    }

    bool is_local_reference(std::string_view value) {
        const std::string v = lower(trim(value));
        return v.empty() || v.starts_with("#") || v.starts_with("data:");
    }

    // Every url(...) and @import in a CSS fragment that is not a local reference.
    void scan_css(std::string_view css, const std::string& where, std::vector<std::string>& out) {
        static const std::regex url_re{R"(url\(\s*(['"]?)([^'")]*)\1\s*\))", std::regex::icase};
        const std::string text{css};
        for (auto it = std::sregex_iterator(text.begin(), text.end(), url_re); it != std::sregex_iterator(); ++it) {
            if (!is_local_reference((*it)[2].str())) out.push_back(where + ": url(" + (*it)[2].str() + ")");
        }
        if (lower(text).find("@import") != std::string::npos) out.push_back(where + ": @import");
    }

    // Thin RAII wrapper over a namespace-aware expat parser with std::function callbacks.
    struct XmlWalker {
        using Attrs = std::vector<std::pair<std::string, std::string>>;
        std::function<void(const std::string&, const Attrs&)> on_start = [](const std::string&, const Attrs&) {};
        std::function<void(const std::string&)> on_end = [](const std::string&) {};
        std::function<void(std::string_view)> on_text = [](std::string_view) {};

        //! Throws SvgError with expat's message and position on malformed input.
        void parse(std::string_view doc) {
            std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> p{XML_ParserCreateNS("UTF-8", kNsSep), &XML_ParserFree};
            if (!p) throw SvgError("xml: parser allocation failed");
            XML_SetUserData(p.get(), this);
            XML_SetElementHandler(
                p.get(),
                [](void* self, const XML_Char* name, const XML_Char** atts) {
                    Attrs attrs;
                    for (int i = 0; atts[i] != nullptr; i += 2) attrs.emplace_back(atts[i], atts[i + 1]);
                    static_cast<XmlWalker*>(self)->on_start(name, attrs);
                },
                [](void* self, const XML_Char* name) { static_cast<XmlWalker*>(self)->on_end(name); });
            XML_SetCharacterDataHandler(p.get(), [](void* self, const XML_Char* s, int len) {
                static_cast<XmlWalker*>(self)->on_text(std::string_view{s, static_cast<std::size_t>(len)});
            });
            // External entities would be a resource load of their own; expat never fetches them,
            // but refuse documents that declare any.
            XML_SetEntityDeclHandler(p.get(), [](void* self, const XML_Char*, int, const XML_Char*, int, const XML_Char*, const XML_Char* system_id,
                                                 const XML_Char*, const XML_Char*) {
                if (system_id != nullptr) static_cast<XmlWalker*>(self)->external_entity = true;
            });
            if (XML_Parse(p.get(), doc.data(), static_cast<int>(doc.size()), XML_TRUE) == XML_STATUS_ERROR) {
                throw SvgError("xml: " + std::string{XML_ErrorString(XML_GetErrorCode(p.get()))} + " at line " +
                               std::to_string(XML_GetCurrentLineNumber(p.get())));
            }
            if (external_entity) throw SvgError("xml: external entity declarations are not allowed");
        }

        bool external_entity{false};
    };

    struct Structure {
        int metadata_blocks{0};
        int nfp_web{0};
        int scripts{0};
        std::vector<std::string> external;
    };

    Structure inspect(std::string_view doc) {
        Structure s;
        XmlWalker w;
        std::vector<std::string> stack;
        std::string style_text;
        w.on_start = [&](const std::string& name, const XmlWalker::Attrs& attrs) {
            stack.push_back(name);
            const auto local = local_name(name);
            if (local == "metadata") ++s.metadata_blocks;
            if (local == "script") ++s.scripts;
            if (name == nfp_name("web")) ++s.nfp_web;
            for (const auto& [attr, value] : attrs) {
                const auto a = lower(std::string{local_name(attr)});
                const std::string where = "<" + std::string{local} + " " + a + ">";
                if ((a == "href" || a == "src") && !is_local_reference(value)) s.external.push_back(where + ": " + value);
                if (attr.starts_with(std::string{kNfpNamespace} + kNsSep)) continue;  // endpoint metadata is declarative
                scan_css(value, where, s.external);
            }
        };
        w.on_text = [&](std::string_view text) {
            if (!stack.empty() && local_name(stack.back()) == "style") style_text.append(text);
        };
        w.on_end = [&](const std::string& name) {
            if (local_name(name) == "style") {
                scan_css(style_text, "<style>", s.external);
                style_text.clear();
            }
            stack.pop_back();
        };
        w.parse(doc);
        return s;
    }

    // Calls `fn(slot_name)` for every {{...}} slot; the return value replaces it.
    std::string substitute(std::string_view src, const std::function<std::string(const std::string&)>& fn) {
        std::string out;
        std::size_t pos = 0;
        while (true) {
            const auto open = src.find("{{", pos);
            if (open == std::string_view::npos) break;
            const auto close = src.find("}}", open + 2);
            if (close == std::string_view::npos) throw SvgError("template: unterminated slot at offset " + std::to_string(open));
            out.append(src.substr(pos, open - pos));
            out += fn(trim(src.substr(open + 2, close - open - 2)));
            pos = close + 2;
        }
        out.append(src.substr(pos));
        return out;
    }

    std::vector<std::string> split_endpoints(std::string_view list) {
        std::vector<std::string> out;
        std::size_t pos = 0;
        while (pos <= list.size()) {
            auto comma = list.find(',', pos);
            if (comma == std::string_view::npos) comma = list.size();
            if (auto e = trim(list.substr(pos, comma - pos)); !e.empty()) out.push_back(std::move(e));
            pos = comma + 1;
        }
        return out;
    }

    std::string read_file(const std::filesystem::path& path) {
        std::ifstream in{path, std::ios::binary};
        if (!in) throw SvgError("cannot read " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

}  // namespace

SvgTemplate load_reference_template(const std::filesystem::path& dir) {
    SvgTemplate t;
    t.source = read_file(dir / "token_template.svg");
    t.bootloader = read_file(dir / "bootloader.js");
    try {
        const auto traits = nlohmann::json::parse(read_file(dir / "token_traits.json"));
        for (auto it = traits.begin(); it != traits.end(); ++it) t.default_traits[it.key()] = it.value().get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw SvgError(std::string{"token_traits.json: "} + e.what());
    }
    return t;
}

std::map<std::string, std::string> token_traits(const std::string& token_id) {
    static constexpr std::array<const char*, 8> kNames{"Dune Runner", "Glass Viper", "Salt Hawk", "Ember Skiff",
                                                       "Mirage",      "Ironwind",    "Red Mesa",  "Dust Lantern"};
    static constexpr std::array<const char*, 6> kHulls{"#5b6b82", "#7a5c3e", "#4f7a5a", "#8a3f4d", "#3f5f8a", "#6c6c6c"};
    static constexpr std::array<const char*, 4> kSkies{"#1d1b3a", "#0f2a3d", "#2b1533", "#14213d"};
    static constexpr std::array<const char*, 5> kFlags{"#d8423a", "#f2c14e", "#3fa7d6", "#59cd90", "#ee6352"};
    static constexpr std::array<const char*, 3> kClasses{"hover frigate", "sand cutter", "dune corvette"};
    const auto h = crypto::sha256(as_bytes("nfp-traits:" + token_id));
    return {{"name", kNames[h[0] % kNames.size()]}, {"hull", kHulls[h[1] % kHulls.size()]}, {"sky_top", kSkies[h[2] % kSkies.size()]},
            {"flag", kFlags[h[3] % kFlags.size()]}, {"class", kClasses[h[4] % kClasses.size()]}, {"serial", token_id}};
}

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::vector<std::string> SvgTemplate::trait_keys() const {
    std::set<std::string> keys;
    (void)substitute(source, [&](const std::string& slot) {
        if (slot.starts_with(kTraitPrefix)) keys.insert(slot.substr(kTraitPrefix.size()));
        return std::string{};
    });
    return {keys.begin(), keys.end()};
}

std::string metadata_block(const NfpMetadata& meta) {
    if (meta.api_endpoints.empty()) throw SvgError("metadata: at least one endpoint is required");
    std::string list;
    for (const auto& e : meta.api_endpoints) {
        if (e.find(',') != std::string::npos || trim(e) != e || e.empty()) throw SvgError("metadata: endpoint '" + e + "' cannot be listed");
        if (!list.empty()) list += ',';
        list += e;
    }
    return "<metadata xmlns:nfp=\"" + std::string{kNfpNamespace} + "\"><nfp:web nfp:lcds=\"" + xml_escape(list) + "\" nfp:chain=\"" +
           xml_escape(meta.chain_id) + "\" nfp:contract=\"" + meta.contract_address.str() + "\" nfp:token=\"" + xml_escape(meta.token_id) +
           "\"/></metadata>";
}

BuiltSvg build_svg(const SvgTemplate& tmpl, const NfpMetadata& meta, const std::map<std::string, std::string>& traits) {
    if (tmpl.bootloader.find("]]>") != std::string::npos) throw SvgError("template: bootloader must not contain ']]>'");
    int metadata_slots = 0;
    int bootloader_slots = 0;
    std::string doc = substitute(tmpl.source, [&](const std::string& slot) -> std::string {
        if (slot == kSlotMetadata) {
            ++metadata_slots;
            return metadata_block(meta);
        }
        if (slot == kSlotBootloader) {
            ++bootloader_slots;
            return "<![CDATA[\n" + tmpl.bootloader + "\n]]>";
        }
        if (slot.starts_with(kTraitPrefix)) {
            const std::string key = slot.substr(kTraitPrefix.size());
            if (auto it = traits.find(key); it != traits.end()) return xml_escape(it->second);
            if (auto it = tmpl.default_traits.find(key); it != tmpl.default_traits.end()) return xml_escape(it->second);
            throw SvgError("template: no value for trait '" + key + "'");
        }
        throw SvgError("template: unknown slot '{{" + slot + "}}'");
    });
    if (metadata_slots != 1) throw SvgError("template: needs exactly one {{nfp:metadata}} slot");
    if (bootloader_slots != 1) throw SvgError("template: needs exactly one {{nfp:bootloader}} slot");

    const Structure s = inspect(doc);
    if (!s.external.empty()) throw SvgError("self-containment: external reference " + s.external.front());
    if (s.metadata_blocks != 1 || s.nfp_web != 1) throw SvgError("template: document must hold exactly one nfp metadata block");
    if (s.scripts < 1) throw SvgError("template: bootloader slot must sit inside a <script> element");
    return BuiltSvg{std::move(doc)};
}

std::vector<std::string> find_external_references(std::string_view svg) { return inspect(svg).external; }

NfpMetadata validate_nfp_metadata(std::string_view svg) {
    XmlWalker w;
    std::vector<XmlWalker::Attrs> found;
    w.on_start = [&](const std::string& name, const XmlWalker::Attrs& attrs) {
        if (name == nfp_name("web")) found.push_back(attrs);
    };
    w.parse(svg);
    if (found.empty()) throw SvgError("metadata: no <web> element in the " + std::string{kNfpNamespace} + " namespace");
    if (found.size() > 1) throw SvgError("metadata: more than one <web> element");

    std::map<std::string, std::string> attrs;
    for (const auto& [k, v] : found.front()) {
        if (k.starts_with(nfp_name(""))) attrs[std::string{local_name(k)}] = v;
    }
    auto field = [&](const std::string& key) {
        auto it = attrs.find(key);
        if (it == attrs.end()) throw SvgError("metadata: missing nfp:" + key);
        return it->second;
    };
    NfpMetadata meta;
    meta.api_endpoints = split_endpoints(field("lcds"));
    if (meta.api_endpoints.empty()) throw SvgError("metadata: nfp:lcds lists no endpoints");
    meta.chain_id = field("chain");
    try {
        meta.contract_address = Address::parse(field("contract"));
    } catch (const DecodingError& e) {
        throw SvgError(std::string{"metadata: bad contract address: "} + e.what());
    }
    meta.token_id = field("token");
    return meta;
}

}  // namespace nfp::svg
