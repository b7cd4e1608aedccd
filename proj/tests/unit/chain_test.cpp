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

#include <catch_amalgamated.hpp>

#include <nfp/chain/chain.hpp>
#include <nfp/client/client.hpp>
#include <nfp/crypto/hash.hpp>

#include "support/kv_contract.hpp"

using namespace nfp;
using namespace nfp::chain;
using client::Session;
using client::Wallet;

namespace {

CodeRegistry kv_codes() { return {{"kv", std::make_shared<test::KvContract>()}}; }

ChainConfig config_with(std::initializer_list<std::pair<const Wallet*, Uscrt>> accounts) {
    ChainConfig cfg;
    cfg.seed = crypto::sha256(as_bytes("chain-test"));
    for (const auto& [w, bal] : accounts) cfg.accounts.push_back({w->address, bal});
    return cfg;
}

struct Fixture {
    Wallet alice = Wallet::from_seed("alice");
    Wallet bob = Wallet::from_seed("bob");
    Wallet hot = Wallet::from_seed("hot");
    Chain chain{config_with({{&alice, 10'000'000}, {&bob, 1'000'000}}), kv_codes()};
    client::LocalClient transport{chain};
    Session session{transport, crypto::sha256(as_bytes("session"))};
    Address kv;

    Fixture() {
        auto out = session.instantiate(alice, "kv", "kv", Json::object());
        REQUIRE(out.ok());
        kv = *out.contract_address;
    }

    Uscrt conserved() const { return chain.total_supply() + chain.burned_fees(); }
};

}  // namespace

TEST_CASE("genesis") {
    SECTION("empty") {
        Chain c{ChainConfig{}, {}};
        CHECK(c.height() == 0);
        CHECK(c.total_supply() == 0);
    }
    SECTION("two accounts") {
        const auto a = Wallet::from_seed("a");
        const auto b = Wallet::from_seed("b");
        Chain c{config_with({{&a, 100}, {&b, 200}}), {}};
        CHECK(c.total_supply() == 300);
    }
    SECTION("duplicate address") {
        const auto a = Wallet::from_seed("a");
        CHECK_THROWS_AS((Chain{config_with({{&a, 1}, {&a, 2}}), {}}), Error);
    }
}

TEST_CASE("bank transfer charges base gas and the fee") {
    Fixture f;
    const Uscrt before = f.conserved();
    const Uscrt alice0 = f.chain.balance(f.alice.address);
    const Uscrt bob0 = f.chain.balance(f.bob.address);
    auto out = f.session.bank_send(f.alice, f.bob.address, 777);
    REQUIRE(out.ok());
    CHECK(out.tx.gas_used >= f.chain.config().gas.base_tx_cost);
    CHECK(f.chain.balance(f.bob.address) == bob0 + 777);
    CHECK(f.chain.balance(f.alice.address) == alice0 - 777 - 5'000);
    CHECK(f.conserved() == before);
}

TEST_CASE("signature, chain id and sequence checks") {
    Fixture f;
    TxBody body{f.alice.pub};
    body.chain_id = f.chain.chain_id();
    body.fee = 1;
    body.msgs = {msg::bank_send(f.bob.address, 1)};
    body.sequence = f.chain.account(f.alice.address).sequence;

    SECTION("signed by someone else") {
        auto tx = sign_tx(body, f.bob.key);
        CHECK(f.chain.broadcast_execute(tx).code == tx_code::kBadSignature);
    }
    SECTION("tampered after signing") {
        auto tx = sign_tx(body, f.alice.key);
        tx.body.fee = 0;
        CHECK(f.chain.broadcast_execute(tx).code == tx_code::kBadSignature);
    }
    SECTION("wrong chain") {
        body.chain_id = "other";
        CHECK(f.chain.broadcast_execute(sign_tx(body, f.alice.key)).code == tx_code::kWrongChain);
    }
    SECTION("replay is rejected") {
        auto tx = sign_tx(body, f.alice.key);
        CHECK(f.chain.broadcast_execute(tx).ok());
        const auto seq = f.chain.account(f.alice.address).sequence;
        CHECK(f.chain.broadcast_execute(tx).code == tx_code::kStaleSequence);
        CHECK(f.chain.account(f.alice.address).sequence == seq);
    }
    SECTION("insufficient fee funds") {
        body.signer = f.hot.address;
        body.signer_pub = f.hot.pub;
        body.sequence = 0;
        body.msgs = {msg::bank_send(f.bob.address, 0)};
        CHECK(f.chain.broadcast_execute(sign_tx(body, f.hot.key)).code == tx_code::kInsufficientFee);
    }
}

TEST_CASE("failed message rolls back state but charges the fee") {
    Fixture f;
    REQUIRE(f.session.execute(f.alice, f.kv, {{"put", {{"key", "k"}, {"value", "original"}}}}).ok());
    const auto dump_before = f.chain.raw_storage_dump();
    const Uscrt alice0 = f.chain.balance(f.alice.address);
    const auto seq0 = f.chain.account(f.alice.address).sequence;

    auto out = f.session.execute(f.alice, f.kv, {{"put_then_fail", {{"key", "k"}, {"value", "changed!"}}}}, 50);
    CHECK(out.tx.code == tx_code::kFailed);
    REQUIRE(out.replies.size() == 1);
    CHECK(out.replies[0]["error"]["kind"] == "boom");
    CHECK_THROWS_AS(out.data(), ContractError);
    CHECK(f.chain.raw_storage_dump().contracts == dump_before.contracts);
    CHECK(f.chain.balance(f.alice.address) == alice0 - 5'000);  // funds returned, fee kept
    CHECK(f.chain.account(f.alice.address).sequence == seq0 + 1);
    CHECK(f.session.query(f.kv, {{"get", {{"key", "k"}}}})["value"] == "original");
}

TEST_CASE("multi-message transactions are atomic") {
    Fixture f;
    const Uscrt bob0 = f.chain.balance(f.bob.address);
    client::ContractCall good{client::ContractCall::Kind::kExecute, f.kv, "", "", {{"put", {{"key", "a"}, {"value", "1"}}}}, 0};
    client::ContractCall bad{client::ContractCall::Kind::kExecute, f.kv, "", "", {{"nope", 1}}, 0};
    auto out = f.session.broadcast(f.alice, {msg::bank_send(f.bob.address, 10)}, {good, bad});
    CHECK(out.tx.code == tx_code::kFailed);
    CHECK(f.chain.balance(f.bob.address) == bob0);
    CHECK(f.session.query_raw(f.kv, {{"get", {{"key", "a"}}}})["error"]["kind"] == "not_found");
}

TEST_CASE("queries are read-only and free") {
    Fixture f;
    REQUIRE(f.session.execute(f.alice, f.kv, {{"put", {{"key", "k"}, {"value", "v1"}}}}).ok());
    CHECK(f.session.query(f.kv, {{"get", {{"key", "k"}}}})["value"] == "v1");
    REQUIRE(f.session.execute(f.alice, f.kv, {{"put", {{"key", "k"}, {"value", "v2"}}}}).ok());
    const Uscrt supply = f.chain.total_supply();
    const auto alice = f.chain.account(f.alice.address);
    CHECK(f.session.query(f.kv, {{"get", {{"key", "k"}}}})["value"] == "v2");
    auto write = f.session.query_raw(f.kv, {{"write", true}});
    CHECK(write["error"]["kind"] == "read_only");
    CHECK(f.chain.total_supply() == supply);
    CHECK(f.chain.account(f.alice.address).balance == alice.balance);
    CHECK(f.chain.account(f.alice.address).sequence == alice.sequence);
}

TEST_CASE("undecryptable envelopes") {
    Fixture f;
    const auto secret = crypto::X25519Secret::generate();
    auto env = crypto::envelope_encrypt(secret, f.chain.consensus_pubkey(), as_bytes("{}"));
    env.ciphertext[0] ^= 1;
    CHECK_THROWS_AS(f.chain.query(f.kv, env), crypto::TransportError);

    TxBody body{f.alice.pub};
    body.chain_id = f.chain.chain_id();
    body.fee = 100;
    body.msgs = {msg::execute(f.kv, env)};
    body.sequence = f.chain.account(f.alice.address).sequence;
    const Uscrt before = f.chain.balance(f.alice.address);
    CHECK(f.chain.broadcast_execute(sign_tx(body, f.alice.key)).code == tx_code::kDecrypt);
    CHECK(f.chain.balance(f.alice.address) == before);
}

TEST_CASE("fee grants") {
    Fixture f;
    REQUIRE(f.session.grant_fee_allowance(f.alice, f.hot.address, 1'000, std::nullopt).ok());
    REQUIRE(f.chain.balance(f.hot.address) == 0);
    const Uscrt alice0 = f.chain.balance(f.alice.address);
    const Uscrt before = f.conserved();

    client::TxOptions granted{300, f.alice.address};
    auto out = f.session.execute(f.hot, f.kv, {{"put", {{"key", "h"}, {"value", "x"}}}}, 0, granted);
    CHECK(out.ok());
    CHECK(f.chain.balance(f.alice.address) == alice0 - 300);
    CHECK(f.chain.balance(f.hot.address) == 0);
    CHECK(f.chain.fee_grant(f.alice.address, f.hot.address)->spend_limit == 700);

    client::TxOptions too_much{800, f.alice.address};
    auto rejected = f.session.execute(f.hot, f.kv, {{"put", {{"key", "h"}, {"value", "y"}}}}, 0, too_much);
    CHECK(rejected.tx.code == tx_code::kFeeGrant);
    CHECK(f.chain.balance(f.alice.address) == alice0 - 300);
    CHECK(f.chain.fee_grant(f.alice.address, f.hot.address)->spend_limit == 700);

    client::TxOptions wrong_granter{100, f.bob.address};
    CHECK(f.session.execute(f.hot, f.kv, {{"put", {{"key", "h"}, {"value", "z"}}}}, 0, wrong_granter).tx.code == tx_code::kFeeGrant);
    CHECK(f.conserved() == before);

    SECTION("failed message under a grant still only costs the granter") {
        auto failed = f.session.execute(f.hot, f.kv, {{"nope", 1}}, 0, client::TxOptions{100, f.alice.address});
        CHECK(failed.tx.code == tx_code::kFailed);
        CHECK(f.chain.balance(f.hot.address) == 0);
        CHECK(f.chain.fee_grant(f.alice.address, f.hot.address)->spend_limit == 600);
    }
    SECTION("revocation") {
        REQUIRE(f.session.broadcast(f.alice, {msg::revoke_fee_allowance(f.hot.address)}, {}).ok());
        CHECK(!f.chain.fee_grant(f.alice.address, f.hot.address));
        CHECK(f.session.execute(f.hot, f.kv, {{"put", {{"key", "h"}, {"value", "z"}}}}, 0, granted).tx.code == tx_code::kFeeGrant);
    }
}

TEST_CASE("fee grant expiration") {
    Fixture f;
    const auto expires = f.chain.height() + 2;
    REQUIRE(f.session.grant_fee_allowance(f.alice, f.hot.address, 10'000, expires).ok());
    client::TxOptions granted{10, f.alice.address};
    // Each accepted tx is followed by a block, so the next execution height advances by one.
    while (f.chain.height() + 1 <= expires) REQUIRE(f.session.execute(f.hot, f.kv, {{"put", {{"key", "e"}, {"value", "1"}}}}, 0, granted).ok());
    CHECK(f.session.execute(f.hot, f.kv, {{"put", {{"key", "e"}, {"value", "2"}}}}, 0, granted).tx.code == tx_code::kFeeGrant);
}

TEST_CASE("contract payments and conservation") {
    Fixture f;
    const Uscrt before = f.conserved();
    REQUIRE(f.session.execute(f.alice, f.kv, {{"put", {{"key", "p"}, {"value", "1"}}}}, 1'000).ok());
    CHECK(f.chain.balance(f.kv) == 1'000);
    REQUIRE(f.session.execute(f.alice, f.kv, {{"pay", {{"to", f.bob.address.str()}, {"amount", 400}}}}).ok());
    CHECK(f.chain.balance(f.kv) == 600);
    auto over = f.session.execute(f.alice, f.kv, {{"pay", {{"to", f.bob.address.str()}, {"amount", 601}}}});
    CHECK(over.tx.code == tx_code::kFailed);
    CHECK(f.chain.balance(f.kv) == 600);
    CHECK(f.conserved() == before);
}

TEST_CASE("gas ceiling rejects without state change") {
    Fixture f;
    const Uscrt alice0 = f.chain.balance(f.alice.address);
    const auto seq0 = f.chain.account(f.alice.address).sequence;
    auto small = f.session.execute(f.alice, f.kv, {{"blob", {{"size", 1'000}}}});
    auto big = f.session.execute(f.alice, f.kv, {{"blob", {{"size", 2'000}}}});
    REQUIRE(small.ok());
    REQUIRE(big.ok());
    CHECK(big.tx.gas_used - small.tx.gas_used == Catch::Approx(1'000.0 * 18).epsilon(0.01));

    const auto dump = f.chain.raw_storage_dump();
    auto huge = f.session.execute(f.alice, f.kv, {{"blob", {{"size", 340'000}}}});
    CHECK(huge.tx.code == tx_code::kOutOfGas);
    CHECK(f.chain.raw_storage_dump().contracts == dump.contracts);
    CHECK(f.chain.balance(f.alice.address) == alice0 - 2 * 5'000);
    CHECK(f.chain.account(f.alice.address).sequence == seq0 + 2);
}

TEST_CASE("payload ceiling follows the gas arithmetic") {
    Fixture f;
    const auto& gas = f.chain.config().gas;
    // 321,000 bytes: base + 18/B = 5,828,000, well under the block limit.
    REQUIRE(gas.base_tx_cost + 321'000 * gas.write_cost_per_byte < gas.block_gas_limit);
    CHECK(f.session.execute(f.alice, f.kv, {{"blob", {{"size", 321'000}}}}).ok());
    // 334,000 bytes: the per-byte write cost alone exceeds it.
    REQUIRE(334'000 * gas.write_cost_per_byte > gas.block_gas_limit);
    CHECK(f.session.execute(f.alice, f.kv, {{"blob", {{"size", 334'000}}}}).tx.code == tx_code::kOutOfGas);
}

TEST_CASE("blocks") {
    Chain c{ChainConfig{}, {}};
    const auto b1 = c.produce_block();
    const auto b2 = c.produce_block();
    CHECK(b1.height == 1);
    CHECK(b2.height == 2);
    CHECK(b1.hash != b2.hash);
    CHECK(b2.prev_hash == b1.hash);
    CHECK(Chain::compute_block_hash(b1.prev_hash, 1, {}) == b1.hash);

    // Independent recomputation of the block hash layout.
    const Hash256 tx = crypto::sha256(as_bytes("tx"));
    Bytes pre(b1.hash.begin(), b1.hash.end());
    for (int i = 7; i >= 0; --i) pre.push_back(static_cast<std::uint8_t>((3ULL >> (8 * i)) & 0xff));
    pre.insert(pre.end(), tx.begin(), tx.end());
    CHECK(Chain::compute_block_hash(b1.hash, 3, {tx}) == crypto::sha256(pre));
}

TEST_CASE("block hash feeds contract entropy") {
    Fixture f;
    auto e1 = f.session.execute(f.alice, f.kv, {{"entropy", true}}).data();
    auto e2 = f.session.execute(f.alice, f.kv, {{"entropy", true}}).data();
    CHECK(e1["entropy"] != e2["entropy"]);
    CHECK(e2["height"].get<std::uint64_t>() == e1["height"].get<std::uint64_t>() + 1);
}

TEST_CASE("storage is sealed at rest") {
    Fixture f;
    const std::string secret = "carrier:A1-A5;battleship:C3-F3";
    REQUIRE(f.session.execute(f.alice, f.kv, {{"put", {{"key", "board/secret-key"}, {"value", secret}}}}).ok());
    const auto dump = f.chain.raw_storage_dump();
    const auto state_key = f.chain.contract_state_key(f.kv);
    std::size_t before = dump.total_bytes();
    bool found = false;
    for (const auto& [sk, blob] : dump.contracts.at(f.kv)) {
        CHECK_FALSE(shares_substring(blob, as_bytes(secret), 8));
        CHECK_FALSE(shares_substring(sk, as_bytes("board/secret-key"), 8));
        if (sk == seal_key(state_key, "board/secret-key")) {
            CHECK(to_string(unseal_value(state_key, sk, blob)) == secret);
            found = true;
        }
    }
    CHECK(found);
    REQUIRE(f.session.execute(f.alice, f.kv, {{"put", {{"key", "other"}, {"value", "more"}}}}).ok());
    CHECK(f.chain.raw_storage_dump().total_bytes() > before);
}

TEST_CASE("snapshot round-trip preserves state and determinism") {
    Fixture f;
    REQUIRE(f.session.execute(f.alice, f.kv, {{"put", {{"key", "k"}, {"value", "v"}}}}, 10).ok());
    REQUIRE(f.session.grant_fee_allowance(f.alice, f.hot.address, 50, 99).ok());
    const Json snap = f.chain.snapshot();
    Chain restored = Chain::restore(snap, kv_codes());
    CHECK(restored.snapshot() == snap);
    CHECK(restored.consensus_pubkey() == f.chain.consensus_pubkey());
    CHECK(restored.query_trusted(f.kv, {{"get", {{"key", "k"}}}})["value"] == "v");

    // Same operations on both copies produce identical states.
    client::LocalClient t2{restored};
    Session s2{t2, crypto::sha256(as_bytes("s2"))};
    Session s1{f.transport, crypto::sha256(as_bytes("s2"))};
    REQUIRE(s1.execute(f.alice, f.kv, {{"put", {{"key", "k2"}, {"value", "w"}}}}).ok());
    REQUIRE(s2.execute(f.alice, f.kv, {{"put", {{"key", "k2"}, {"value", "w"}}}}).ok());
    CHECK(restored.snapshot() == f.chain.snapshot());
}

TEST_CASE("trusted path uses the same metering and rollback") {
    Fixture f;
    Gas used = 0;
    f.chain.execute_trusted(f.alice.address, f.kv, {{"blob", {{"size", 1'000}}}}, 0, &used);
    CHECK(used >= f.chain.config().gas.base_tx_cost + 18 * 1'000);
    const auto dump = f.chain.raw_storage_dump();
    CHECK_THROWS_AS(f.chain.execute_trusted(f.alice.address, f.kv, {{"put_then_fail", {{"key", "z"}, {"value", "1"}}}}), ContractError);
    CHECK_THROWS_AS(f.chain.execute_trusted(f.alice.address, f.kv, {{"blob", {{"size", 400'000}}}}), OutOfGas);
    CHECK(f.chain.raw_storage_dump().contracts == dump.contracts);
}
