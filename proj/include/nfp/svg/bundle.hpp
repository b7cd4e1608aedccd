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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <nfp/crypto/bytes.hpp>

namespace nfp::svg {

class BundleError : public Error {
  public:
    using Error::Error;
};

inline constexpr std::size_t kDefaultBundleCeiling = 320'000;

struct Asset {
    std::string name;
    std::string mime;
    Bytes data;
};

struct BundleOptions {
    std::size_t ceiling{kDefaultBundleCeiling};  // compressed bytes
    int gzip_level{9};
};

struct Bundle {
    std::string source;                   // concatenated, pre-compression
    Bytes data;                           // gzip(source)
    std::string content_encoding{"gzip"};
    std::vector<std::string> module_order;  // dependencies before dependents

    [[nodiscard]] std::size_t raw_size() const { return source.size(); }
    [[nodiscard]] std::size_t compressed_size() const { return data.size(); }
};

//! Relative import specifiers ("./x.js", "../lib/y.js") found in a module, in source order.
[[nodiscard]] std::vector<std::string> find_imports(const std::string& source);

//! Resolves `spec` against the directory of `from`; throws BundleError if it climbs above the root.
[[nodiscard]] std::string resolve_import(const std::string& from, const std::string& spec);

//! Concatenates the module graph reachable from `entry` into one script sharing a single
//! scope: import statements are dropped and top-level `export` keywords stripped. Assets
//! become data: URIs in a frozen `NFP_ASSETS` table ahead of the code. The result is
//! gzip-compressed deterministically and checked against the ceiling.
[[nodiscard]] Bundle bundle_package(const std::string& entry, const std::map<std::string, std::string>& sources, const std::vector<Asset>& assets,
                                    const BundleOptions& opts = {});

}  // namespace nfp::svg
