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

#include <nfp/chain/types.hpp>
#include <nfp/crypto/secp256k1.hpp>

namespace nfp::contract {

using chain::Json;

namespace permission {
    inline constexpr const char* kOwner = "owner";
    inline constexpr const char* kPackages = "packages";
    inline constexpr const char* kNotifications = "notifications";
    inline constexpr const char* kGameState = "game_state";
}  // namespace permission

[[nodiscard]] bool is_known_permission(std::string_view p);

struct PermitParams {
    std::string permit_name;
    std::vector<Address> allowed_contracts;
    std::vector<std::string> permissions;
    std::string chain_id;

    [[nodiscard]] Json to_json() const;
    static PermitParams from_json(const Json& j);
};

//! Offline-signed bearer credential for private queries. Revocable by its signer.
struct QueryPermit {
    PermitParams params;
    crypto::PublicKey pub;
    crypto::Signature signature;

    [[nodiscard]] Address signer() const { return derive_address(pub); }
    [[nodiscard]] Json to_json() const;
    //! Throws on malformed input; does not check the signature.
    static QueryPermit from_json(const Json& j);
};

[[nodiscard]] QueryPermit sign_permit(const PermitParams& params, const crypto::PrivateKey& key);

//! Signature over the canonical params only; contract-specific checks happen in the contract.
[[nodiscard]] bool verify_permit_signature(const QueryPermit& permit);

//! Wraps a private query: {"with_permit":{"permit":...,"query":...}}.
[[nodiscard]] Json with_permit(const QueryPermit& permit, const Json& query);

}  // namespace nfp::contract
