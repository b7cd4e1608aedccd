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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nfp/crypto/address.hpp>
#include <nfp/crypto/bytes.hpp>

namespace nfp::svg {

inline constexpr std::string_view kNfpNamespace = "urn:nfp:v1";

class SvgError : public Error {
  public:
    using Error::Error;
};

//! Connection details a token document carries so a client can reach its contract.
struct NfpMetadata {
    std::vector<std::string> api_endpoints;  // tried in order
    std::string chain_id;
    Address contract_address;
    std::string token_id;

    bool operator==(const NfpMetadata&) const = default;
};

//! SVG source with three kinds of slot:
//!   {{nfp:metadata}}    replaced by the <metadata> block
//!   {{nfp:bootloader}}  replaced by the bootloader script text (CDATA-wrapped)
//!   {{trait:NAME}}      replaced by the XML-escaped trait value
struct SvgTemplate {
    std::string source;
    std::string bootloader;
    std::map<std::string, std::string> default_traits;

    //! Trait names referenced by the source, sorted and unique.
    [[nodiscard]] std::vector<std::string> trait_keys() const;
};

struct BuiltSvg {
    std::string document;
    [[nodiscard]] std::size_t size() const { return document.size(); }
};

//! `traits` overrides the template defaults; every referenced trait must resolve.
//! Throws SvgError on unresolved slots, malformed XML or any external reference.
[[nodiscard]] BuiltSvg build_svg(const SvgTemplate& tmpl, const NfpMetadata& meta, const std::map<std::string, std::string>& traits = {});

//! Throws SvgError when the nfp namespace or the endpoint list is missing.
[[nodiscard]] NfpMetadata validate_nfp_metadata(std::string_view svg);

//! External resource loads found in a document, one human-readable entry each.
//! Fragment references (#id) and data: URIs are local and allowed.
[[nodiscard]] std::vector<std::string> find_external_references(std::string_view svg);

//! Reads token_template.svg, bootloader.js and token_traits.json from `dir`.
[[nodiscard]] SvgTemplate load_reference_template(const std::filesystem::path& dir);

//! Per-token traits picked deterministically from the token id.
[[nodiscard]] std::map<std::string, std::string> token_traits(const std::string& token_id);

[[nodiscard]] std::string metadata_block(const NfpMetadata& meta);
[[nodiscard]] std::string xml_escape(std::string_view text);

}  // namespace nfp::svg
