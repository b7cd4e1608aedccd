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

#include <nfp/contract/permit.hpp>

#include <algorithm>

namespace nfp::contract {

bool is_known_permission(std::string_view p) {
    return p == permission::kOwner || p == permission::kPackages || p == permission::kNotifications || p == permission::kGameState;
}

Json PermitParams::to_json() const {
    Json contracts = Json::array();
    for (const auto& a : allowed_contracts) contracts.push_back(a.str());
    return Json{{"permit_name", permit_name}, {"allowed_contracts", contracts}, {"permissions", permissions}, {"chain_id", chain_id}};
}

PermitParams PermitParams::from_json(const Json& j) {
    PermitParams p;
    p.permit_name = j.at("permit_name").get<std::string>();
    for (const auto& a : j.at("allowed_contracts")) p.allowed_contracts.push_back(Address::parse(a.get<std::string>()));
    p.permissions = j.at("permissions").get<std::vector<std::string>>();
    p.chain_id = j.at("chain_id").get<std::string>();
    return p;
}

Json QueryPermit::to_json() const {
    return Json{{"params", params.to_json()}, {"signature", {{"pub_key", pub.hex()}, {"signature", to_hex(signature.compact())}}}};
}

QueryPermit QueryPermit::from_json(const Json& j) {
    const auto& sig = j.at("signature");
    return QueryPermit{PermitParams::from_json(j.at("params")),
                       crypto::PublicKey::from_compressed(from_hex(sig.at("pub_key").get<std::string>())),
                       crypto::Signature::from_compact(from_hex(sig.at("signature").get<std::string>()))};
}

QueryPermit sign_permit(const PermitParams& params, const crypto::PrivateKey& key) {
    return QueryPermit{params, key.public_key(), crypto::sign(key, as_bytes(chain::canonical(params.to_json())))};
}

bool verify_permit_signature(const QueryPermit& permit) {
    return crypto::verify(permit.pub, as_bytes(chain::canonical(permit.params.to_json())), permit.signature);
}

Json with_permit(const QueryPermit& permit, const Json& query) { return Json{{"with_permit", {{"permit", permit.to_json()}, {"query", query}}}}; }

}  // namespace nfp::contract
