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

#include <nfp/chain/tx.hpp>

#include <nfp/crypto/hash.hpp>

namespace nfp::chain {

Json TxBody::to_json() const {
    return Json{{"chain_id", chain_id},
                {"fee", fee},
                {"fee_granter", fee_granter ? Json(fee_granter->str()) : Json(nullptr)},
                {"msgs", msgs},
                {"sequence", sequence},
                {"signer", signer.str()},
                {"signer_pub", signer_pub.hex()}};
}

TxBody TxBody::from_json(const Json& j) {
    std::optional<Address> granter;
    if (j.contains("fee_granter") && !j.at("fee_granter").is_null()) granter = address_field(j, "fee_granter");
    std::vector<Json> msgs;
    for (const auto& m : j.at("msgs")) msgs.push_back(m);
    TxBody body{crypto::PublicKey::from_compressed(from_hex(j.at("signer_pub").get<std::string>()))};
    body.chain_id = j.at("chain_id").get<std::string>();
    body.fee = j.at("fee").get<Uscrt>();
    body.fee_granter = granter;
    body.msgs = std::move(msgs);
    body.sequence = j.at("sequence").get<std::uint64_t>();
    body.signer = address_field(j, "signer");
    return body;
}

Json SignedTx::to_json() const { return Json{{"body", body.to_json()}, {"signature", to_hex(signature.compact())}}; }

SignedTx SignedTx::from_json(const Json& j) {
    return SignedTx{TxBody::from_json(j.at("body")), crypto::Signature::from_compact(from_hex(j.at("signature").get<std::string>()))};
}

Hash256 SignedTx::hash() const { return crypto::sha256(as_bytes(canonical(to_json()))); }

SignedTx sign_tx(TxBody body, const crypto::PrivateKey& key) {
    const auto sig = crypto::sign(key, as_bytes(body.sign_bytes()));
    return SignedTx{std::move(body), sig};
}

namespace msg {

    Json bank_send(const Address& to, Uscrt amount) { return {{"bank_send", {{"to", to.str()}, {"amount", amount}}}}; }

    Json grant_fee_allowance(const Address& grantee, Uscrt spend_limit, std::optional<std::uint64_t> expiration) {
        return {{"grant_fee_allowance",
                 {{"grantee", grantee.str()}, {"spend_limit", spend_limit}, {"expiration", expiration ? Json(*expiration) : Json(nullptr)}}}};
    }

    Json revoke_fee_allowance(const Address& grantee) { return {{"revoke_fee_allowance", {{"grantee", grantee.str()}}}}; }

    Json instantiate(const std::string& code_id, const std::string& label, const crypto::Envelope& init, Uscrt funds) {
        return {{"instantiate", {{"code_id", code_id}, {"label", label}, {"msg", init.hex()}, {"funds", funds}}}};
    }

    Json execute(const Address& contract, const crypto::Envelope& body, Uscrt funds) {
        return {{"execute", {{"contract", contract.str()}, {"msg", body.hex()}, {"funds", funds}}}};
    }

}  // namespace msg

Json TxResult::to_json() const {
    return Json{{"code", code},     {"log", log},           {"gas_used", gas_used},
                {"height", height}, {"tx_hash", to_hex(tx_hash)}, {"responses", responses}};
}

TxResult TxResult::from_json(const Json& j) {
    TxResult r;
    r.code = j.at("code").get<std::string>();
    r.log = j.value("log", std::string{});
    r.gas_used = j.value("gas_used", Gas{0});
    r.height = j.value("height", std::uint64_t{0});
    if (j.contains("tx_hash")) r.tx_hash = fixed_from_hex<32>(j.at("tx_hash").get<std::string>());
    for (const auto& x : j.value("responses", Json::array())) r.responses.push_back(x);
    return r;
}

}  // namespace nfp::chain
