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

#include <nfp/client/client.hpp>

namespace nfp::client {

Wallet Wallet::from_key(const crypto::PrivateKey& key) {
    const auto pub = key.public_key();
    return Wallet{key, pub, derive_address(pub)};
}

Wallet Wallet::from_seed(std::string_view seed) { return from_key(crypto::PrivateKey::from_seed(as_bytes("nfp-wallet:" + std::string{seed}))); }

chain::TxResult LocalClient::broadcast(const chain::SignedTx& tx) {
    auto result = chain_.broadcast_execute(tx);
    if (auto_block_ && !result.rejected()) chain_.produce_block();
    return result;
}

const Json& unwrap_reply(const Json& reply) {
    if (reply.contains("error")) {
        const Json& e = reply.at("error");
        throw chain::ContractError(e.value("kind", std::string{"error"}), e.value("message", std::string{}));
    }
    return reply.at("ok");
}

const Json& Outcome::data() const {
    for (const auto& r : replies) {
        if (r.contains("error")) unwrap_reply(r);
    }
    if (tx.rejected() || tx.code == chain::tx_code::kFailed) throw TxRejected(tx.code, tx.log);
    for (const auto& r : replies) {
        if (r.contains("ok")) return r.at("ok");
    }
    throw Error("transaction carried no contract reply");
}

Session::Session(ChainClient& client, Hash256 seed) : client_{client}, drbg_{seed} {}

crypto::X25519Secret Session::next_secret() { return crypto::X25519Secret{drbg_.next<32>()}; }

Outcome Session::broadcast(const Wallet& signer, const std::vector<Json>& chain_msgs, const std::vector<ContractCall>& calls,
                           const TxOptions& opts, bool dry_run) {
    if (!consensus_) consensus_ = client_.consensus_pubkey();

    struct Sent {
        crypto::X25519Secret secret;
        crypto::Envelope request;
    };
    std::vector<Sent> sent;
    chain::TxBody body{signer.pub};
    body.chain_id = client_.chain_id();
    body.fee = opts.fee;
    body.fee_granter = opts.fee_granter;
    body.msgs = chain_msgs;
    body.sequence = client_.account(signer.address).sequence;
    for (const auto& call : calls) {
        auto secret = next_secret();
        auto env = crypto::envelope_encrypt(secret, *consensus_, as_bytes(chain::canonical(call.msg)), drbg_.next<12>());
        if (call.kind == ContractCall::Kind::kExecute) {
            body.msgs.push_back(chain::msg::execute(call.contract, env, call.funds));
        } else {
            body.msgs.push_back(chain::msg::instantiate(call.code_id, call.label, env, call.funds));
        }
        sent.push_back({secret, std::move(env)});
    }

    const auto tx = chain::sign_tx(std::move(body), signer.key);
    Outcome out;
    out.signed_tx = tx.to_json();
    if (dry_run) return out;

    out.tx = client_.broadcast(tx);
    std::size_t call_index = 0;
    for (std::size_t i = 0; i < out.tx.responses.size(); ++i) {
        const Json& entry = out.tx.responses[i];
        if (i < chain_msgs.size() || !entry.contains("response")) {
            out.replies.push_back(entry);
            continue;
        }
        const Sent& s = sent.at(call_index++);
        const auto response = crypto::Envelope::parse_hex(entry.at("response").get<std::string>());
        const Bytes plain = crypto::envelope_open_response(s.secret, *consensus_, s.request, response);
        out.replies.push_back(Json::parse(plain.begin(), plain.end()));
        if (entry.contains("contract_address") && !out.contract_address) {
            out.contract_address = chain::address_field(entry, "contract_address");
        }
    }
    return out;
}

Outcome Session::execute(const Wallet& signer, const Address& contract, const Json& msg, Uscrt funds, const TxOptions& opts) {
    ContractCall call;
    call.contract = contract;
    call.msg = msg;
    call.funds = funds;
    return broadcast(signer, {}, {call}, opts);
}

Outcome Session::instantiate(const Wallet& signer, const std::string& code_id, const std::string& label, const Json& msg, Uscrt funds,
                             const TxOptions& opts) {
    ContractCall call;
    call.kind = ContractCall::Kind::kInstantiate;
    call.code_id = code_id;
    call.label = label;
    call.msg = msg;
    call.funds = funds;
    return broadcast(signer, {}, {call}, opts);
}

Outcome Session::bank_send(const Wallet& signer, const Address& to, Uscrt amount, const TxOptions& opts) {
    return broadcast(signer, {chain::msg::bank_send(to, amount)}, {}, opts);
}

Outcome Session::grant_fee_allowance(const Wallet& granter, const Address& grantee, Uscrt limit, std::optional<std::uint64_t> expiration,
                                     const TxOptions& opts) {
    return broadcast(granter, {chain::msg::grant_fee_allowance(grantee, limit, expiration)}, {}, opts);
}

Json Session::query_raw(const Address& contract, const Json& msg) {
    if (!consensus_) consensus_ = client_.consensus_pubkey();
    const auto secret = next_secret();
    const auto request = crypto::envelope_encrypt(secret, *consensus_, as_bytes(chain::canonical(msg)), drbg_.next<12>());
    const auto response = client_.query(contract, request);
    const Bytes plain = crypto::envelope_open_response(secret, *consensus_, request, response);
    return Json::parse(plain.begin(), plain.end());
}

Json Session::query(const Address& contract, const Json& msg) { return unwrap_reply(query_raw(contract, msg)); }

}  // namespace nfp::client
