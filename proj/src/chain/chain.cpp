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

#include <nfp/chain/chain.hpp>

#include <mutex>
#include <set>
#include <shared_mutex>
#include <utility>

#include <nfp/crypto/hash.hpp>

namespace nfp::chain {

namespace {

    struct ContractRecord {
        std::string code_id;
        std::string label;
        Address creator;
        StateKey state_key{};
        Hash256 seed{};
    };

    struct State {
        ChainConfig config;
        std::map<Address, Account> accounts;
        std::map<std::pair<Address, Address>, FeeGrant> grants;
        std::map<Address, ContractRecord> contracts;
        SealedStore store;
        std::vector<BlockHeader> blocks;
        std::vector<Hash256> pending_txs;
        Gas pending_gas{0};
        Uscrt burned{0};
        std::uint64_t contract_counter{0};
        crypto::Drbg drbg{Hash256{}};
        FixedBytes<32> consensus_secret{};
    };

    class MsgFailure : public Error {
      public:
        using Error::Error;
    };

    Address contract_address(const std::string& code_id, std::uint64_t counter) {
        const auto h = crypto::sha256(concat({as_bytes("contract:"), as_bytes(code_id), be64(counter)}));
        FixedBytes<20> payload{};
        std::copy_n(h.begin(), 20, payload.begin());
        return Address{payload};
    }

    Json error_json(const std::string& kind, const std::string& message) {
        return Json{{"error", {{"kind", kind}, {"message", message}}}};
    }

    // Uncommitted changes of one transaction layered over the committed state.
    class TxState final : public ContractBackend {
      public:
        explicit TxState(const State& base) : base_{base} {}

        const ContractRecord& record(const Address& contract) const {
            if (auto it = new_contracts_.find(contract); it != new_contracts_.end()) return it->second;
            if (auto it = base_.contracts.find(contract); it != base_.contracts.end()) return it->second;
            throw ContractError("not_found", "no contract at " + contract.str());
        }

        bool has_contract(const Address& contract) const {
            return new_contracts_.contains(contract) || base_.contracts.contains(contract);
        }

        std::optional<Bytes> storage_get(const Address& contract, std::string_view key) override {
            if (auto it = writes_.find({contract, std::string{key}}); it != writes_.end()) return it->second;
            auto cit = base_.store.contracts.find(contract);
            if (cit == base_.store.contracts.end()) return std::nullopt;
            const auto& rec = record(contract);
            const SealedKey sk = seal_key(rec.state_key, key);
            auto vit = cit->second.find(sk);
            if (vit == cit->second.end()) return std::nullopt;
            return unseal_value(rec.state_key, sk, vit->second);
        }

        void storage_set(const Address& contract, std::string_view key, ByteView value) override {
            writes_[{contract, std::string{key}}] = Bytes(value.begin(), value.end());
        }

        void storage_remove(const Address& contract, std::string_view key) override {
            writes_[{contract, std::string{key}}] = std::nullopt;
        }

        Account& account(const Address& addr) {
            if (auto it = accounts_.find(addr); it != accounts_.end()) return it->second;
            if (auto it = base_.accounts.find(addr); it != base_.accounts.end()) return accounts_.emplace(addr, it->second).first->second;
            return accounts_.emplace(addr, Account{addr, 0, 0}).first->second;
        }

        Uscrt balance_of(const Address& who) override { return account(who).balance; }

        void transfer(const Address& from, const Address& to, Uscrt amount) override {
            if (amount == 0) return;
            Account& src = account(from);
            if (src.balance < amount) throw ContractError("insufficient_funds", "insufficient funds in " + from.str());
            src.balance -= amount;
            account(to).balance += amount;
        }

        void set_grant(const FeeGrant& g) { grants_[{g.granter, g.grantee}] = g; }
        void remove_grant(const Address& granter, const Address& grantee) { grants_[{granter, grantee}] = std::nullopt; }

        Address create_contract(const std::string& code_id, const std::string& label, const Address& creator, crypto::Drbg& drbg) {
            const Address addr = contract_address(code_id, base_.contract_counter + new_contracts_.size());
            ContractRecord rec{code_id, label, creator, drbg.next<32>(), drbg.next<32>()};
            new_contracts_.emplace(addr, std::move(rec));
            return addr;
        }

        void commit(State& target, crypto::Drbg& drbg) {
            for (auto& [addr, rec] : new_contracts_) {
                target.contracts.emplace(addr, std::move(rec));
                target.store.contracts[addr];
                ++target.contract_counter;
            }
            for (auto& [addr, acct] : accounts_) target.accounts[addr] = acct;
            for (auto& [key, grant] : grants_) {
                if (grant) {
                    target.grants[key] = *grant;
                } else {
                    target.grants.erase(key);
                }
            }
            for (auto& [slot, value] : writes_) {
                const auto& [contract, key] = slot;
                const auto& rec = target.contracts.at(contract);
                const SealedKey sk = seal_key(rec.state_key, key);
                auto& entries = target.store.contracts[contract];
                if (value) {
                    entries[sk] = seal_value(rec.state_key, sk, *value, drbg.next<12>());
                } else {
                    entries.erase(sk);
                }
            }
        }

      private:
        const State& base_;
        std::map<Address, Account> accounts_;
        std::map<std::pair<Address, Address>, std::optional<FeeGrant>> grants_;
        std::map<Address, ContractRecord> new_contracts_;
        std::map<std::pair<Address, std::string>, std::optional<Bytes>> writes_;
    };

    Uscrt amount_field(const Json& j, const char* key) { return j.contains(key) ? j.at(key).get<Uscrt>() : 0; }

}  // namespace

struct Chain::Impl {
    State state;
    CodeRegistry codes;
    mutable std::shared_mutex mutex;

    crypto::X25519Secret consensus_secret() const { return crypto::X25519Secret{state.consensus_secret}; }

    const std::shared_ptr<Contract>& code(const std::string& code_id) const {
        auto it = codes.find(code_id);
        if (it == codes.end()) throw ContractError("not_found", "unknown code id '" + code_id + "'");
        return it->second;
    }

    std::uint64_t exec_height() const { return state.blocks.back().height + 1; }

    Env make_env(const Address& contract, std::optional<Address> sender, Uscrt funds, const Hash256& tx_hash, bool query) const {
        Env env;
        env.chain_id = state.config.chain_id;
        env.height = query ? state.blocks.back().height : exec_height();
        env.block_hash = state.blocks.back().hash;
        env.tx_hash = tx_hash;
        env.contract = contract;
        env.sender = std::move(sender);
        env.funds = funds;
        return env;
    }

    Json run_execute(TxState& txs, GasMeter& gas, const Address& sender, const Address& contract, const Json& msg, Uscrt funds,
                     const Hash256& tx_hash) {
        const auto& rec = txs.record(contract);
        txs.transfer(sender, contract, funds);
        ContractContext ctx{make_env(contract, sender, funds, tx_hash, false), txs, gas, state.config.gas, rec.seed, false};
        return code(rec.code_id)->execute(ctx, msg);
    }

    std::pair<Address, Json> run_instantiate(TxState& txs, GasMeter& gas, const Address& sender, const std::string& code_id,
                                             const std::string& label, const Json& msg, Uscrt funds, const Hash256& tx_hash) {
        const auto& contract_code = code(code_id);
        const Address addr = txs.create_contract(code_id, label, sender, state.drbg);
        const auto& rec = txs.record(addr);
        txs.transfer(sender, addr, funds);
        ContractContext ctx{make_env(addr, sender, funds, tx_hash, false), txs, gas, state.config.gas, rec.seed, false};
        Json data = contract_code->instantiate(ctx, msg);
        return {addr, std::move(data)};
    }

    Json run_query(const Address& contract, const Json& msg, Gas& used) const {
        TxState view{state};
        const auto& rec = view.record(contract);
        GasMeter gas{state.config.gas.query_gas_limit};
        ContractContext ctx{make_env(contract, std::nullopt, 0, Hash256{}, true), view, gas, state.config.gas, rec.seed, true};
        Json out = code(rec.code_id)->query(ctx, msg);
        used = gas.used();
        return out;
    }

    // Decrypted contract messages, paired with their request envelopes for replies.
    struct Opened {
        crypto::Envelope request;
        std::optional<Json> body;  // nullopt when the plaintext is not JSON
    };

    TxResult broadcast(const SignedTx& tx);
};

Chain::Chain(ChainConfig config, CodeRegistry codes) : impl_{std::make_unique<Impl>()} {
    std::set<Address> seen;
    for (const auto& a : config.accounts) {
        if (!seen.insert(a.address).second) throw Error("genesis: duplicate address " + a.address.str());
    }
    State& s = impl_->state;
    s.config = std::move(config);
    s.drbg = crypto::Drbg{crypto::sha256(concat({as_bytes("nfp-chain-seed"), s.config.seed}))};
    s.consensus_secret = crypto::X25519Secret{s.drbg.next<32>()}.bytes();
    for (const auto& a : s.config.accounts) s.accounts[a.address] = Account{a.address, a.balance, 0};
    BlockHeader genesis;
    genesis.height = 0;
    genesis.hash = crypto::sha256(as_bytes("nfp-genesis:" + s.config.chain_id));
    s.blocks.push_back(genesis);
    impl_->codes = std::move(codes);
}

Chain::Chain(std::unique_ptr<Impl> impl) : impl_{std::move(impl)} {}
Chain::~Chain() = default;
Chain::Chain(Chain&&) noexcept = default;
Chain& Chain::operator=(Chain&&) noexcept = default;

const ChainConfig& Chain::config() const { return impl_->state.config; }

crypto::X25519Public Chain::consensus_pubkey() const { return impl_->consensus_secret().public_key(); }

std::uint64_t Chain::height() const {
    std::shared_lock lock{impl_->mutex};
    return impl_->state.blocks.back().height;
}

BlockHeader Chain::last_block() const {
    std::shared_lock lock{impl_->mutex};
    return impl_->state.blocks.back();
}

std::optional<BlockHeader> Chain::block(std::uint64_t height) const {
    std::shared_lock lock{impl_->mutex};
    if (height >= impl_->state.blocks.size()) return std::nullopt;
    return impl_->state.blocks[height];
}

Account Chain::account(const Address& addr) const {
    std::shared_lock lock{impl_->mutex};
    if (auto it = impl_->state.accounts.find(addr); it != impl_->state.accounts.end()) return it->second;
    return Account{addr, 0, 0};
}

std::optional<FeeGrant> Chain::fee_grant(const Address& granter, const Address& grantee) const {
    std::shared_lock lock{impl_->mutex};
    if (auto it = impl_->state.grants.find({granter, grantee}); it != impl_->state.grants.end()) return it->second;
    return std::nullopt;
}

Uscrt Chain::total_supply() const {
    std::shared_lock lock{impl_->mutex};
    Uscrt total = 0;
    for (const auto& [addr, acct] : impl_->state.accounts) total += acct.balance;
    return total;
}

Uscrt Chain::burned_fees() const {
    std::shared_lock lock{impl_->mutex};
    return impl_->state.burned;
}

std::vector<ContractInfo> Chain::contracts() const {
    std::shared_lock lock{impl_->mutex};
    std::vector<ContractInfo> out;
    for (const auto& [addr, rec] : impl_->state.contracts) out.push_back({addr, rec.code_id, rec.label, rec.creator});
    return out;
}

Hash256 Chain::compute_block_hash(const Hash256& prev, std::uint64_t height, const std::vector<Hash256>& tx_hashes) {
    crypto::Sha256 h;
    h.update(prev).update(be64(height));
    for (const auto& t : tx_hashes) h.update(t);
    return h.finish();
}

BlockHeader Chain::produce_block() {
    std::unique_lock lock{impl_->mutex};
    State& s = impl_->state;
    BlockHeader header;
    header.height = s.blocks.back().height + 1;
    header.prev_hash = s.blocks.back().hash;
    header.tx_hashes = std::move(s.pending_txs);
    header.gas_used = s.pending_gas;
    header.hash = compute_block_hash(header.prev_hash, header.height, header.tx_hashes);
    s.pending_txs.clear();
    s.pending_gas = 0;
    s.blocks.push_back(header);
    return header;
}

TxResult Chain::broadcast_execute(const SignedTx& tx) {
    std::unique_lock lock{impl_->mutex};
    return impl_->broadcast(tx);
}

TxResult Chain::Impl::broadcast(const SignedTx& tx) {
    TxResult result;
    result.tx_hash = tx.hash();
    result.height = exec_height();
    const TxBody& body = tx.body;
    const GasParams& params = state.config.gas;

    auto reject = [&](const char* code, std::string log) {
        result.code = code;
        result.log = std::move(log);
        return result;
    };

    if (body.chain_id != state.config.chain_id) return reject(tx_code::kWrongChain, "chain id mismatch");
    if (derive_address(body.signer_pub) != body.signer) return reject(tx_code::kBadSignature, "signer does not match public key");
    if (!crypto::verify(body.signer_pub, as_bytes(body.sign_bytes()), tx.signature)) {
        return reject(tx_code::kBadSignature, "signature verification failed");
    }
    if (body.msgs.empty()) return reject(tx_code::kMalformed, "transaction has no messages");

    const Account signer = [&] {
        auto it = state.accounts.find(body.signer);
        return it == state.accounts.end() ? Account{body.signer, 0, 0} : it->second;
    }();
    if (body.sequence != signer.sequence) {
        return reject(tx_code::kStaleSequence, "expected sequence " + std::to_string(signer.sequence));
    }

    // Fee payer must be able to cover the fee before anything runs.
    const Address payer = body.fee_granter.value_or(body.signer);
    if (body.fee_granter) {
        auto git = state.grants.find({*body.fee_granter, body.signer});
        if (git == state.grants.end()) return reject(tx_code::kFeeGrant, "no fee allowance from granter");
        if (git->second.expired_at(result.height)) return reject(tx_code::kFeeGrant, "fee allowance expired");
        if (git->second.spend_limit < body.fee) return reject(tx_code::kFeeGrant, "fee exceeds remaining allowance");
    }
    {
        auto pit = state.accounts.find(payer);
        const Uscrt payer_balance = pit == state.accounts.end() ? 0 : pit->second.balance;
        if (payer_balance < body.fee) return reject(tx_code::kInsufficientFee, "insufficient funds for fee");
    }

    // Decrypt every contract body up front; a bad envelope rejects the whole tx.
    std::vector<std::optional<Opened>> opened;
    try {
        for (const auto& m : body.msgs) {
            const Json* inner = nullptr;
            if (m.contains("execute")) inner = &m.at("execute");
            if (m.contains("instantiate")) inner = &m.at("instantiate");
            if (inner == nullptr) {
                opened.emplace_back(std::nullopt);
                continue;
            }
            Opened o{crypto::Envelope::parse_hex(inner->at("msg").get<std::string>()), std::nullopt};
            const Bytes plain = crypto::envelope_decrypt(consensus_secret(), o.request);
            o.body = Json::parse(plain.begin(), plain.end(), nullptr, false);
            if (o.body->is_discarded()) o.body.reset();
            opened.emplace_back(std::move(o));
        }
    } catch (const crypto::TransportError&) {
        return reject(tx_code::kDecrypt, "envelope decryption failed");
    } catch (const std::exception& e) {
        return reject(tx_code::kMalformed, e.what());
    }

    TxState txs{state};
    GasMeter gas{params.block_gas_limit};
    bool failed = false;
    std::string failure_log;
    try {
        gas.consume(params.base_tx_cost);
        for (std::size_t i = 0; i < body.msgs.size() && !failed; ++i) {
            const Json& m = body.msgs[i];
            if (m.contains("bank_send")) {
                const Json& p = m.at("bank_send");
                gas.consume(2 * params.write_cost_flat);
                try {
                    txs.transfer(body.signer, address_field(p, "to"), p.at("amount").get<Uscrt>());
                    result.responses.push_back(Json::object());
                } catch (const ContractError& e) {
                    failed = true;
                    failure_log = e.what();
                    result.responses.push_back(error_json(e.kind(), e.what()));
                }
            } else if (m.contains("grant_fee_allowance")) {
                const Json& p = m.at("grant_fee_allowance");
                gas.consume(params.write_cost_flat);
                const Address grantee = address_field(p, "grantee");
                if (grantee == body.signer) {
                    failed = true;
                    failure_log = "cannot grant a fee allowance to yourself";
                    result.responses.push_back(error_json("invalid", failure_log));
                    continue;
                }
                std::optional<std::uint64_t> expiration;
                if (p.contains("expiration") && !p.at("expiration").is_null()) expiration = p.at("expiration").get<std::uint64_t>();
                txs.set_grant(FeeGrant{body.signer, grantee, p.at("spend_limit").get<Uscrt>(), expiration});
                result.responses.push_back(Json::object());
            } else if (m.contains("revoke_fee_allowance")) {
                gas.consume(params.write_cost_flat);
                txs.remove_grant(body.signer, address_field(m.at("revoke_fee_allowance"), "grantee"));
                result.responses.push_back(Json::object());
            } else if (m.contains("execute") || m.contains("instantiate")) {
                const bool is_exec = m.contains("execute");
                const Json& p = is_exec ? m.at("execute") : m.at("instantiate");
                const Opened& o = *opened[i];
                Json reply;
                Json entry = Json::object();
                try {
                    if (!o.body) throw invalid("message body is not valid JSON");
                    if (is_exec) {
                        reply = Json{{"ok", run_execute(txs, gas, body.signer, address_field(p, "contract"), *o.body,
                                                        amount_field(p, "funds"), result.tx_hash)}};
                    } else {
                        auto [addr, data] = run_instantiate(txs, gas, body.signer, p.at("code_id").get<std::string>(),
                                                            p.value("label", std::string{}), *o.body, amount_field(p, "funds"),
                                                            result.tx_hash);
                        entry["contract_address"] = addr.str();
                        reply = Json{{"ok", std::move(data)}};
                    }
                } catch (const ContractError& e) {
                    failed = true;
                    failure_log = e.what();
                    reply = error_json(e.kind(), e.what());
                } catch (const OutOfGas&) {
                    throw;
                } catch (const Json::exception& e) {
                    failed = true;
                    failure_log = e.what();
                    reply = error_json("invalid", e.what());
                } catch (const DecodingError& e) {
                    failed = true;
                    failure_log = e.what();
                    reply = error_json("invalid", e.what());
                }
                const auto sealed = crypto::envelope_seal_response(consensus_secret(), o.request, as_bytes(canonical(reply)));
                entry["response"] = sealed.hex();
                result.responses.push_back(std::move(entry));
            } else {
                failed = true;
                failure_log = "unknown message type";
                result.responses.push_back(error_json("invalid", failure_log));
            }
        }
    } catch (const OutOfGas&) {
        result.responses.clear();
        result.gas_used = gas.used();
        return reject(tx_code::kOutOfGas, "gas would exceed block gas limit of " + std::to_string(params.block_gas_limit));
    } catch (const std::exception& e) {
        failed = true;
        failure_log = e.what();
    }

    if (!failed) txs.commit(state, state.drbg);

    // Fee and sequence apply whether or not the messages succeeded.
    state.accounts.try_emplace(body.signer, Account{body.signer, 0, 0});
    state.accounts.at(body.signer).sequence += 1;
    if (body.fee > 0) {
        state.accounts.at(payer).balance -= body.fee;
        if (body.fee_granter) state.grants.at({*body.fee_granter, body.signer}).spend_limit -= body.fee;
        state.burned += body.fee;
    }

    result.gas_used = gas.used();
    result.code = failed ? tx_code::kFailed : tx_code::kOk;
    result.log = failure_log;
    state.pending_txs.push_back(result.tx_hash);
    state.pending_gas += result.gas_used;
    return result;
}

crypto::Envelope Chain::query(const Address& contract, const crypto::Envelope& request) const {
    std::shared_lock lock{impl_->mutex};
    const auto secret = impl_->consensus_secret();
    const Bytes plain = crypto::envelope_decrypt(secret, request);
    Json reply;
    try {
        const Json msg = Json::parse(plain.begin(), plain.end());
        Gas used = 0;
        reply = Json{{"ok", impl_->run_query(contract, msg, used)}};
    } catch (const ContractError& e) {
        reply = error_json(e.kind(), e.what());
    } catch (const OutOfGas&) {
        reply = error_json("out_of_gas", "query gas limit exceeded");
    } catch (const Json::exception& e) {
        reply = error_json("invalid", e.what());
    } catch (const DecodingError& e) {
        reply = error_json("invalid", e.what());
    }
    return crypto::envelope_seal_response(secret, request, as_bytes(canonical(reply)));
}

Json Chain::execute_trusted(const Address& sender, const Address& contract, const Json& msg, Uscrt funds, Gas* gas_used) {
    std::unique_lock lock{impl_->mutex};
    State& s = impl_->state;
    const Hash256 tx_hash = crypto::sha256(
        as_bytes(canonical(Json{{"trusted", {{"sender", sender.str()}, {"contract", contract.str()}, {"msg", msg}, {"funds", funds},
                                             {"nonce", s.drbg.counter()}}}})));
    TxState txs{s};
    GasMeter gas{s.config.gas.block_gas_limit};
    gas.consume(s.config.gas.base_tx_cost);
    Json out = impl_->run_execute(txs, gas, sender, contract, msg, funds, tx_hash);
    txs.commit(s, s.drbg);
    s.pending_txs.push_back(tx_hash);
    s.pending_gas += gas.used();
    if (gas_used != nullptr) *gas_used = gas.used();
    return out;
}

Address Chain::instantiate_trusted(const Address& sender, const std::string& code_id, const std::string& label, const Json& msg,
                                   Uscrt funds) {
    std::unique_lock lock{impl_->mutex};
    State& s = impl_->state;
    const Hash256 tx_hash = crypto::sha256(as_bytes(canonical(Json{{"trusted_instantiate", msg}, {"nonce", s.drbg.counter()}})));
    TxState txs{s};
    GasMeter gas{s.config.gas.block_gas_limit};
    auto [addr, data] = impl_->run_instantiate(txs, gas, sender, code_id, label, msg, funds, tx_hash);
    txs.commit(s, s.drbg);
    s.pending_txs.push_back(tx_hash);
    return addr;
}

Json Chain::query_trusted(const Address& contract, const Json& msg) const {
    std::shared_lock lock{impl_->mutex};
    Gas used = 0;
    return impl_->run_query(contract, msg, used);
}

SealedStore Chain::raw_storage_dump() const {
    std::shared_lock lock{impl_->mutex};
    return impl_->state.store;
}

StateKey Chain::contract_state_key(const Address& contract) const {
    std::shared_lock lock{impl_->mutex};
    auto it = impl_->state.contracts.find(contract);
    if (it == impl_->state.contracts.end()) throw Error("no contract at " + contract.str());
    return it->second.state_key;
}

Json Chain::snapshot() const {
    std::shared_lock lock{impl_->mutex};
    const State& s = impl_->state;
    Json accounts = Json::array();
    for (const auto& [addr, a] : s.accounts) accounts.push_back({{"address", addr.str()}, {"balance", a.balance}, {"sequence", a.sequence}});
    Json grants = Json::array();
    for (const auto& [key, g] : s.grants) {
        grants.push_back({{"granter", g.granter.str()},
                          {"grantee", g.grantee.str()},
                          {"spend_limit", g.spend_limit},
                          {"expiration", g.expiration ? Json(*g.expiration) : Json(nullptr)}});
    }
    Json contracts = Json::array();
    for (const auto& [addr, rec] : s.contracts) {
        Json entries = Json::object();
        if (auto it = s.store.contracts.find(addr); it != s.store.contracts.end()) {
            for (const auto& [k, v] : it->second) entries[to_hex(k)] = to_base64(v);
        }
        contracts.push_back({{"address", addr.str()},
                             {"code_id", rec.code_id},
                             {"label", rec.label},
                             {"creator", rec.creator.str()},
                             {"state_key", to_hex(rec.state_key)},
                             {"seed", to_hex(rec.seed)},
                             {"store", entries}});
    }
    Json blocks = Json::array();
    for (const auto& b : s.blocks) blocks.push_back(b);
    Json pending = Json::array();
    for (const auto& h : s.pending_txs) pending.push_back(to_hex(h));
    return Json{{"config", s.config},
                {"accounts", accounts},
                {"grants", grants},
                {"contracts", contracts},
                {"blocks", blocks},
                {"pending_txs", pending},
                {"pending_gas", s.pending_gas},
                {"burned", s.burned},
                {"contract_counter", s.contract_counter},
                {"drbg_seed", to_hex(s.drbg.seed())},
                {"drbg_counter", s.drbg.counter()},
                {"consensus_secret", to_hex(s.consensus_secret)}};
}

Chain Chain::restore(const Json& j, CodeRegistry codes) {
    auto impl = std::make_unique<Impl>();
    State& s = impl->state;
    s.config = j.at("config").get<ChainConfig>();
    for (const auto& a : j.at("accounts")) {
        const Address addr = address_field(a, "address");
        s.accounts[addr] = Account{addr, a.at("balance").get<Uscrt>(), a.at("sequence").get<std::uint64_t>()};
    }
    for (const auto& g : j.at("grants")) {
        FeeGrant grant{address_field(g, "granter"), address_field(g, "grantee"), g.at("spend_limit").get<Uscrt>(), std::nullopt};
        if (!g.at("expiration").is_null()) grant.expiration = g.at("expiration").get<std::uint64_t>();
        s.grants[{grant.granter, grant.grantee}] = grant;
    }
    for (const auto& c : j.at("contracts")) {
        const Address addr = address_field(c, "address");
        s.contracts[addr] = ContractRecord{c.at("code_id").get<std::string>(), c.at("label").get<std::string>(), address_field(c, "creator"),
                                           fixed_from_hex<32>(c.at("state_key").get<std::string>()),
                                           fixed_from_hex<32>(c.at("seed").get<std::string>())};
        auto& entries = s.store.contracts[addr];
        for (const auto& [k, v] : c.at("store").items()) entries[fixed_from_hex<32>(k)] = from_base64(v.get<std::string>());
    }
    for (const auto& b : j.at("blocks")) {
        BlockHeader h;
        h.height = b.at("height").get<std::uint64_t>();
        h.hash = fixed_from_hex<32>(b.at("hash").get<std::string>());
        h.prev_hash = fixed_from_hex<32>(b.at("prev_hash").get<std::string>());
        for (const auto& t : b.at("txs")) h.tx_hashes.push_back(fixed_from_hex<32>(t.get<std::string>()));
        h.gas_used = b.at("gas_used").get<Gas>();
        s.blocks.push_back(std::move(h));
    }
    for (const auto& t : j.at("pending_txs")) s.pending_txs.push_back(fixed_from_hex<32>(t.get<std::string>()));
    s.pending_gas = j.at("pending_gas").get<Gas>();
    s.burned = j.at("burned").get<Uscrt>();
    s.contract_counter = j.at("contract_counter").get<std::uint64_t>();
    s.drbg = crypto::Drbg{fixed_from_hex<32>(j.at("drbg_seed").get<std::string>()), j.at("drbg_counter").get<std::uint64_t>()};
    s.consensus_secret = fixed_from_hex<32>(j.at("consensus_secret").get<std::string>());
    impl->codes = std::move(codes);
    return Chain{std::move(impl)};
}

}  // namespace nfp::chain
