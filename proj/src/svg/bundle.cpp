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

#include <nfp/svg/bundle.hpp>

#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include <nfp/codec/gzip.hpp>

namespace nfp::svg {

namespace {

    // `import x from "./a.js";`, `import {a, b} from './a.js'`, `import "./a.js";`, one per line.
    const std::regex& import_line() {
        static const std::regex re{R"(^\s*import\s+(?:[^'"]*?\s+from\s+)?(['"])([^'"]+)\1\s*;?\s*$)"};
        return re;
    }

    const std::regex& export_prefix() {
        static const std::regex re{R"(^(\s*)export\s+(?=(const|let|var|function|class|async)\b))"};
        return re;
    }

    const std::regex& export_list() {
        static const std::regex re{R"(^\s*export\s*\{[^}]*\}\s*;?\s*$)"};
        return re;
    }

    std::vector<std::string> lines_of(const std::string& s) {
        std::vector<std::string> out;
        std::istringstream in{s};
        for (std::string line; std::getline(in, line);) out.push_back(line);
        return out;
    }

}  // namespace

std::vector<std::string> find_imports(const std::string& source) {
    std::vector<std::string> out;
    for (const auto& line : lines_of(source)) {
        std::smatch m;
        if (std::regex_match(line, m, import_line())) {
            const std::string spec = m[2].str();
            if (!spec.starts_with("./") && !spec.starts_with("../")) throw BundleError("bare import '" + spec + "' cannot be bundled");
            out.push_back(spec);
        }
    }
    return out;
}

std::string resolve_import(const std::string& from, const std::string& spec) {
    std::vector<std::string> parts;
    std::istringstream dir{from};
    for (std::string seg; std::getline(dir, seg, '/');) parts.push_back(seg);
    if (!parts.empty()) parts.pop_back();  // drop the file name
    std::istringstream rel{spec};
    for (std::string seg; std::getline(rel, seg, '/');) {
        if (seg.empty() || seg == ".") continue;
        if (seg == "..") {
            if (parts.empty()) throw BundleError("import '" + spec + "' from '" + from + "' leaves the source root");
            parts.pop_back();
        } else {
            parts.push_back(seg);
        }
    }
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : "/") + p;
    return out;
}

Bundle bundle_package(const std::string& entry, const std::map<std::string, std::string>& sources, const std::vector<Asset>& assets,
                      const BundleOptions& opts) {
    Bundle b;

    // Depth-first post-order gives dependencies before dependents; cycles are tolerated
    // because the shared scope resolves names at call time.
    std::set<std::string> visited;
    auto visit = [&](auto&& self, const std::string& path, const std::string& importer) -> void {
        if (visited.contains(path)) return;
        auto it = sources.find(path);
        if (it == sources.end()) throw BundleError("unresolved import '" + path + "'" + (importer.empty() ? "" : " from '" + importer + "'"));
        visited.insert(path);
        for (const auto& spec : find_imports(it->second)) self(self, resolve_import(path, spec), path);
        b.module_order.push_back(path);
    };
    visit(visit, entry, "");

    std::string& out = b.source;
    out += "\"use strict\";\n";
    nlohmann::json table = nlohmann::json::object();
    std::set<std::string> names;
    for (const auto& a : assets) {
        if (!names.insert(a.name).second) throw BundleError("duplicate asset '" + a.name + "'");
        table[a.name] = "data:" + a.mime + ";base64," + to_base64(a.data);
    }
    out += "const NFP_ASSETS = Object.freeze(" + table.dump() + ");\n";
    for (const auto& path : b.module_order) {
        out += "// " + path + "\n";
        for (const auto& line : lines_of(sources.at(path))) {
            if (std::regex_match(line, import_line()) || std::regex_match(line, export_list())) continue;
            if (line.find("export default") != std::string::npos) throw BundleError(path + ": default exports have no name in a shared scope");
            out += std::regex_replace(line, export_prefix(), "$1") + "\n";
        }
    }

    b.data = codec::gzip_compress(as_bytes(out), opts.gzip_level);
    if (b.data.size() > opts.ceiling) {
        throw BundleError("bundle is " + std::to_string(b.data.size()) + " bytes after compression, over the " + std::to_string(opts.ceiling) +
                          " byte ceiling");
    }
    return b;
}

}  // namespace nfp::svg
