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

#include <nfp/game/board.hpp>

#include "support/game_driver.hpp"
#include "support/trusted_games.hpp"

using namespace nfp;
using test::MatchDriver;
using test::NfpWorld;
using Json = chain::Json;
namespace ref = test::referee;

namespace {

// Same orientations and digit count as fleet_b, so the two setup messages have equal length.
ref::Fleet fleet_c() {
    return {{"carrier", 0, 0, false}, {"battleship", 5, 0, true}, {"cruiser", 2, 7, true}, {"submarine", 9, 5, false}, {"destroyer", 6, 3, false}};
}

std::set<ref::XY> occupied(const ref::Fleet& f) {
    std::set<ref::XY> out;
    for (const auto& s : f) {
        for (const auto& c : ref::ship_cells(s)) out.insert(c);
    }
    return out;
}

Json fetch_notifications(NfpWorld& w, const test::Wallet& who, const std::string& token) {
    return w.ask(who, {{"fetch_notifications", {{"token_id", token}}}}).at("ok").at("notifications");
}

}  // namespace

TEST_CASE("lobby and joining") {
    NfpWorld w;
    const auto ta = w.mint(w.alice);
    const auto tb = w.mint(w.bob);
    const auto tb2 = w.mint(w.bob);

    CHECK(NfpWorld::error_kind(w.exec(w.alice, {{"new_match", {{"token_id", ta}, {"wager", 1000}}}}, 999)) == "wrong_funds");
    CHECK(NfpWorld::error_kind(w.exec(w.bob, {{"new_match", {{"token_id", ta}, {"wager", 0}}}})) == "unauthorized");
    const auto out = w.exec(w.alice, {{"new_match", {{"token_id", ta}, {"wager", 1000}}}}, 1000);
    REQUIRE(out.ok());
    const std::string id = out.data().at("match_id");
    CHECK(id.size() == 32);
    CHECK(w.chain.balance(w.contract) == 1000);

    const auto lobby = w.ask_anon({{"list_open_matches", {}}}).at("ok").at("matches");
    REQUIRE(lobby.size() == 1);
    CHECK(lobby[0]["match_id"] == id);
    CHECK(lobby[0]["wager"] == 1000);
    CHECK_FALSE(lobby[0].contains("players"));

    CHECK(NfpWorld::error_kind(w.exec(w.alice, {{"new_match", {{"token_id", ta}, {"wager", 0}}}})) == "token_busy");
    CHECK(NfpWorld::error_kind(w.exec(w.alice, {{"join_match", {{"token_id", ta}, {"match_id", id}}}}, 1000)) == "invalid");
    CHECK(NfpWorld::error_kind(w.exec(w.bob, {{"join_match", {{"token_id", tb}, {"match_id", id}}}}, 10)) == "wrong_funds");
    CHECK(NfpWorld::error_kind(w.exec(w.bob, {{"join_match", {{"token_id", tb}, {"match_id", "00"}}}})) == "not_found");
    REQUIRE(w.exec(w.bob, {{"join_match", {{"token_id", tb}, {"match_id", id}}}}, 1000).ok());
    CHECK(w.chain.balance(w.contract) == 2000);
    CHECK(NfpWorld::error_kind(w.exec(w.bob, {{"join_match", {{"token_id", tb2}, {"match_id", id}}}}, 1000)) == "wrong_phase");
    CHECK(w.ask_anon({{"list_open_matches", {}}}).at("ok").at("matches").empty());

    for (const auto* who : {&w.alice, &w.bob}) {
        const auto& token = who == &w.alice ? ta : tb;
        const auto n = fetch_notifications(w, *who, token);
        CHECK(n.back()["payload"]["event"] == "match_joined");
    }
}

TEST_CASE("setup validation") {
    NfpWorld w;
    MatchDriver m{w, w.alice, w.mint(w.alice), w.bob, w.mint(w.bob)};
    m.open(0);
    auto submit = [&](int p, const Json& placements, const test::Wallet* signer = nullptr) {
        return w.exec(signer ? *signer : *m.players[p],
                      {{"submit_setup", {{"token_id", m.tokens[p]}, {"match_id", m.match_id}, {"placements", placements}}}});
    };
    auto bad = ref::to_json(test::fleet_a());
    bad[0]["x"] = 6;  // carrier off the right edge
    CHECK(NfpWorld::error_kind(submit(0, bad)) == "invalid_board");
    bad = ref::to_json(test::fleet_a());
    bad.erase(4);
    CHECK(NfpWorld::error_kind(submit(0, bad)) == "invalid_board");
    CHECK(NfpWorld::error_kind(submit(0, "not a list")) == "invalid_board");
    CHECK(NfpWorld::error_kind(submit(0, ref::to_json(test::fleet_a()), &w.bob)) == "unauthorized");
    CHECK(NfpWorld::error_kind(m.attack(0, 0, 0)) == "wrong_phase");

    REQUIRE(submit(0, ref::to_json(test::fleet_a())).ok());
    CHECK(NfpWorld::error_kind(submit(0, ref::to_json(test::fleet_b()))) == "already_submitted");
    const auto v = m.view(0);
    CHECK(v["my_setup_done"] == true);
    CHECK(v["opponent_setup_done"] == false);
    CHECK(v["my_board"]["placements"].size() == 5);
    CHECK(m.view(1)["my_board"]["placements"].is_null());
    CHECK(m.view(1)["opponent_grid"]["hits"].empty());

    REQUIRE(submit(1, ref::to_json(test::fleet_b())).ok());
    CHECK(m.view(0)["phase"] == "playing");
    CHECK(m.view(0)["first"] != m.view(1)["first"]);
    const int first = m.first();
    for (int p = 0; p < 2; ++p) {
        const auto n = fetch_notifications(w, *m.players[p], m.tokens[p]);
        CHECK(n.back()["payload"]["event"] == "match_started");
        CHECK(n.back()["payload"]["your_turn"] == (p == first));
    }
}

TEST_CASE("match state is private to the participants") {
    NfpWorld w;
    MatchDriver m{w, w.alice, w.mint(w.alice), w.bob, w.mint(w.bob)};
    m.open(0);
    m.setup(test::fleet_a(), test::fleet_b());
    const Json q{{"match_state", {{"match_id", m.match_id}, {"token_id", m.tokens[0]}}}};
    CHECK(NfpWorld::error_kind(w.ask_anon(q)) == "unauthorized");
    CHECK(NfpWorld::error_kind(w.ask(w.bob, q)) == "unauthorized");
    CHECK(NfpWorld::error_kind(w.ask(w.mallory, q)) == "unauthorized");
    const auto limited = contract::with_permit(w.permit(w.alice, {"owner"}), q);
    CHECK(NfpWorld::error_kind(w.session.query_raw(w.contract, limited)) == "unauthorized");
    CHECK(w.ask(w.alice, q).contains("ok"));
}

TEST_CASE("scripted game: turns, reveals, payout") {
    NfpWorld w;
    const chain::Uscrt wager = 250'000;
    MatchDriver m{w, w.alice, w.mint(w.alice), w.bob, w.mint(w.bob)};
    const auto supply_plus_burned = [&] { return w.chain.total_supply() + w.chain.burned_fees(); };
    const auto invariant = supply_plus_burned();
    m.open(wager);
    m.setup(test::fleet_a(), test::fleet_b());
    CHECK(w.chain.balance(w.contract) == 2 * wager);

    const int first = m.first();
    const int second = 1 - first;
    const ref::Fleet fleets[2] = {test::fleet_a(), test::fleet_b()};
    ref::Referee referee{fleets[0], fleets[1]};

    // The second mover may not fire first; rejected attempts leave the view unchanged.
    const auto before = m.view(second);
    CHECK(NfpWorld::error_kind(m.attack(second, 0, 0)) == "not_your_turn");
    CHECK(m.view(second) == before);

    // The first mover sinks the opponent's destroyer; the reveal comes only with the last hit.
    const ref::Ship destroyer = fleets[second][4];
    const auto water = [&] {
        std::vector<ref::XY> out;
        const auto occ = occupied(fleets[first]);
        for (int x = 0; x < 10; ++x) {
            for (int y = 0; y < 10; ++y) {
                if (!occ.contains({x, y})) out.emplace_back(x, y);
            }
        }
        return out;
    }();
    const auto cells = ref::ship_cells(destroyer);
    auto r1 = m.attack(first, cells[0].first, cells[0].second).data();
    CHECK(r1["hit"] == true);
    CHECK(r1["destroyed"].is_null());
    referee.shoot(first, cells[0].first, cells[0].second);
    CHECK(m.view(first)["opponent_grid"]["destroyed"].empty());
    CHECK(m.view(first)["turn"] == "opponent");

    CHECK(NfpWorld::error_kind(m.attack(first, 5, 5)) == "not_your_turn");
    auto miss = m.attack(second, water[0].first, water[0].second).data();
    CHECK(miss["hit"] == false);
    referee.shoot(second, water[0].first, water[0].second);

    CHECK(NfpWorld::error_kind(m.attack(first, cells[0].first, cells[0].second)) == "already_attacked");
    CHECK(NfpWorld::error_kind(m.attack(first, 10, 0)) == "invalid");
    auto r2 = m.attack(first, cells[1].first, cells[1].second).data();
    const auto ev = referee.shoot(first, cells[1].first, cells[1].second);
    REQUIRE(ev.destroyed.has_value());
    CHECK(r2["destroyed"]["type"] == *ev.destroyed);
    CHECK(r2["destroyed"]["cells"] == Json({Json::array({cells[0].first, cells[0].second}), Json::array({cells[1].first, cells[1].second})}));
    const auto view = m.view(first);
    CHECK(view["opponent_grid"]["destroyed"].size() == 1);
    CHECK(view["opponent_grid"]["hits"].size() == 2);
    CHECK(view["log"].size() == 3);
    CHECK(view["log"][1]["by"] == "opponent");
    CHECK(m.view(second)["my_board"]["hits_received"].size() == 2);
    CHECK(m.view(second)["opponent_grid"]["misses"].size() == 1);

    // Finish the game with the first mover winning. Winner balance: +2w on top of its own stake.
    const chain::Uscrt w_before = w.chain.balance(m.players[first]->address);
    const chain::Uscrt l_before = w.chain.balance(m.players[second]->address);
    std::vector<ref::XY> targets;
    for (const auto& s : fleets[second]) {
        for (const auto& c : ref::ship_cells(s)) {
            if (std::find(cells.begin(), cells.end(), c) == cells.end()) targets.push_back(c);
        }
    }
    int turn = second;
    std::size_t wi = 0;
    std::size_t li = 1;
    int winner_txs = 0;
    int loser_txs = 0;
    Json last;
    while (wi < targets.size()) {
        const auto [x, y] = turn == first ? targets[wi++] : water[li++];
        last = m.attack(turn, x, y).data();
        const auto expected = referee.shoot(turn, x, y);
        CHECK(last["hit"] == expected.hit);
        CHECK(last["game_over"] == expected.game_over);
        (turn == first ? winner_txs : loser_txs) += 1;
        turn = 1 - turn;
    }
    CHECK(last["game_over"] == true);
    CHECK(referee.winner() == first);
    CHECK(NfpWorld::error_kind(m.attack(second, 9, 9)) == "wrong_phase");
    CHECK(w.chain.balance(m.players[first]->address) == w_before + 2 * wager - winner_txs * client::TxOptions{}.fee);
    // The rejected post-game attack above still paid its fee.
    CHECK(w.chain.balance(m.players[second]->address) == l_before - (loser_txs + 1) * client::TxOptions{}.fee);
    CHECK(w.chain.balance(w.contract) == 0);
    CHECK(supply_plus_burned() == invariant);

    const auto fin = m.view(second);
    CHECK(fin["winner"] == "opponent");
    CHECK(fin["phase"] == "finished");
    CHECK(fin["turn"].is_null());
    CHECK(fetch_notifications(w, *m.players[second], m.tokens[second]).back()["payload"]["event"] == "match_finished");

    // Both tokens are free again.
    CHECK(w.exec(*m.players[0], {{"new_match", {{"token_id", m.tokens[0]}, {"wager", 0}}}}).ok());
}

TEST_CASE("payout follows the token to its current owner") {
    NfpWorld w;
    const chain::Uscrt wager = 1'000'000;
    MatchDriver m{w, w.alice, w.mint(w.alice), w.bob, w.mint(w.bob)};
    m.open(wager);
    m.setup(test::fleet_a(), test::fleet_b());
    REQUIRE(w.exec(w.alice, {{"transfer", {{"token_id", m.tokens[0]}, {"recipient", w.carol.address.str()}}}}).ok());
    CHECK(NfpWorld::error_kind(m.attack(0, 0, 0, &w.alice)) == "unauthorized");
    m.players[0] = &w.carol;
    const auto carol_before = w.chain.balance(w.carol.address);
    m.play_out(0, test::fleet_b(), test::fleet_a());
    // 17 winning shots, each paying the default fee.
    CHECK(w.chain.balance(w.carol.address) == carol_before + 2 * wager - 17 * client::TxOptions{}.fee);
}

TEST_CASE("delegated hot wallet plays on a fee grant") {
    NfpWorld w;
    const auto hot = test::Wallet::from_seed("alice-hot");
    MatchDriver m{w, w.alice, w.mint(w.alice), w.bob, w.mint(w.bob)};
    REQUIRE(w.exec(w.alice, {{"approve_delegate", {{"delegate", hot.address.str()}, {"token_id", m.tokens[0]}, {"methods", {"submit_setup", "attack"}}}}}).ok());
    REQUIRE(w.session.grant_fee_allowance(w.alice, hot.address, 1'000'000, std::nullopt).ok());
    client::TxOptions granted;
    granted.fee_granter = w.alice.address;

    m.open(5'000);
    REQUIRE(w.exec(hot, {{"submit_setup", {{"token_id", m.tokens[0]}, {"match_id", m.match_id}, {"placements", ref::to_json(test::fleet_a())}}}}, 0, granted).ok());
    REQUIRE(w.exec(w.bob, {{"submit_setup", {{"token_id", m.tokens[1]}, {"match_id", m.match_id}, {"placements", ref::to_json(test::fleet_b())}}}}).ok());
    // The hot wallet cannot wager on its own.
    CHECK(NfpWorld::error_kind(w.exec(hot, {{"new_match", {{"token_id", m.tokens[0]}, {"wager", 0}}}}, 0, granted)) == "unauthorized");

    const int first = m.first();
    const auto targets = [] {
        std::vector<ref::XY> out;
        for (const auto& s : test::fleet_b()) {
            for (const auto& c : ref::ship_cells(s)) out.push_back(c);
        }
        return out;
    }();
    const auto water_for_bob = [] {
        std::vector<ref::XY> out;
        const auto occ = occupied(test::fleet_a());
        for (int x = 0; x < 10; ++x) {
            for (int y = 0; y < 10; ++y) {
                if (!occ.contains({x, y})) out.emplace_back(x, y);
            }
        }
        return out;
    }();
    int turn = first;
    std::size_t wi = 0;
    std::size_t bi = 0;
    while (wi < targets.size()) {
        if (turn == 0) {
            const auto [x, y] = targets[wi++];
            const auto out = m.attack(0, x, y, &hot, granted);
            CAPTURE(out.tx.code, out.tx.log, NfpWorld::error_kind(out));
            REQUIRE(out.ok());
        } else {
            const auto [x, y] = water_for_bob[bi++];
            REQUIRE(m.attack(1, x, y).ok());
        }
        turn = 1 - turn;
    }
    CHECK(w.chain.balance(hot.address) == 0);
    CHECK(m.view(0)["winner"] == "you");
}

TEST_CASE("opponent observations do not depend on the hidden layout") {
    // Two chains with identical history except for bob's fleet.
    struct Run {
        NfpWorld w{Json::object(), "paired"};
        MatchDriver m{w, w.alice, w.mint(w.alice), w.bob, w.mint(w.bob)};
        std::vector<Json> alice_views;
        std::vector<chain::Gas> gas;
    };
    const ref::Fleet hidden[2] = {test::fleet_b(), fleet_c()};
    Run runs[2];

    // Cells that are water in both hidden fleets, and cells of alice's water for bob to fire at.
    std::vector<ref::XY> shared_water;
    const auto occ_b = occupied(hidden[0]);
    const auto occ_c = occupied(hidden[1]);
    const auto occ_a = occupied(test::fleet_a());
    std::vector<ref::XY> alice_water;
    for (int x = 0; x < 10; ++x) {
        for (int y = 0; y < 10; ++y) {
            if (!occ_b.contains({x, y}) && !occ_c.contains({x, y})) shared_water.emplace_back(x, y);
            if (!occ_a.contains({x, y})) alice_water.emplace_back(x, y);
        }
    }
    REQUIRE(shared_water.size() >= 60);

    for (int r = 0; r < 2; ++r) {
        auto& run = runs[r];
        auto& m = run.m;
        m.open(10'000);
        // Alice sets up first so bob's hidden layout is the last input before play starts
        // and cannot reach the block hash that picks the first player.
        auto submit = [&](int p, const ref::Fleet& f) {
            auto out = run.w.exec(*m.players[p], {{"submit_setup", {{"token_id", m.tokens[p]}, {"match_id", m.match_id}, {"placements", ref::to_json(f)}}}});
            REQUIRE(out.ok());
            return out.tx.gas_used;
        };
        run.gas.push_back(submit(0, test::fleet_a()));
        run.alice_views.push_back(m.view(0));
        run.gas.push_back(submit(1, hidden[r]));
        run.alice_views.push_back(m.view(0));

        int turn = m.first();
        std::size_t ai = 0;
        std::size_t bi = 0;
        for (int step = 0; step < 40; ++step) {
            const auto [x, y] = turn == 0 ? shared_water[ai++] : alice_water[bi++];
            auto out = m.attack(turn, x, y);
            REQUIRE(out.ok());
            run.gas.push_back(out.tx.gas_used);
            if (turn == 0) run.alice_views.push_back(out.data());
            run.alice_views.push_back(m.view(0));
            turn = 1 - turn;
        }
        run.alice_views.push_back(fetch_notifications(run.w, run.w.alice, m.tokens[0]));

        // Raw sealed storage never contains the layout in any recognizable form.
        const auto packed = game::Board::from_placements(ref::to_json(hidden[r]).get<std::vector<game::Placement>>()).encode();
        for (const auto& [addr, entries] : run.w.chain.raw_storage_dump().contracts) {
            for (const auto& [key, blob] : entries) {
                const std::string raw = to_string(blob);
                CHECK(raw.find(packed) == std::string::npos);
                CHECK(raw.find("placements") == std::string::npos);
                CHECK(raw.find("battleship") == std::string::npos);
            }
        }
    }

    REQUIRE(runs[0].alice_views.size() == runs[1].alice_views.size());
    for (std::size_t i = 0; i < runs[0].alice_views.size(); ++i) {
        CAPTURE(i);
        CHECK(runs[0].alice_views[i] == runs[1].alice_views[i]);
    }
    CHECK(runs[0].gas == runs[1].gas);
    CHECK(runs[0].m.first() == runs[1].m.first());

    // Sanity check that the comparison can fail: bob's own view does differ.
    CHECK(runs[0].m.view(1)["my_board"] != runs[1].m.view(1)["my_board"]);
}

TEST_CASE("contract agrees with the independent referee on random games") {
    NfpWorld w;
    test::TrustedGames games{w};
    std::mt19937_64 rng{2026};
    for (int g = 0; g < 60; ++g) {
        const ref::Fleet fleets[2] = {ref::random_fleet(rng), ref::random_fleet(rng)};
        auto m = games.start("ref" + std::to_string(g), fleets[0], fleets[1]);
        ref::Referee referee{fleets[0], fleets[1]};
        const std::vector<ref::XY> orders[2] = {ref::random_attack_order(rng), ref::random_attack_order(rng)};
        std::size_t next[2] = {0, 0};
        int turn = m.first;
        while (!referee.winner()) {
            const auto [x, y] = orders[turn][next[turn]++];
            const Json got = games.attack(m, turn, x, y);
            const auto want = referee.shoot(turn, x, y);
            REQUIRE(got["hit"] == want.hit);
            REQUIRE(got["game_over"] == want.game_over);
            if (want.destroyed) {
                REQUIRE(got["destroyed"]["type"] == *want.destroyed);
                Json cells = Json::array();
                for (const auto& [cx, cy] : want.destroyed_cells) cells.push_back(Json::array({cx, cy}));
                REQUIRE(got["destroyed"]["cells"] == cells);
            } else {
                REQUIRE(got["destroyed"].is_null());
            }
            turn = 1 - turn;
        }
        CHECK_THROWS_AS(games.attack(m, turn, 0, 0), chain::ContractError);
    }
}

TEST_CASE("first player is unbiased") {
    NfpWorld w;
    test::TrustedGames games{w};
    constexpr int kMatches = 10'000;
    int first_is_creator = 0;
    for (int i = 0; i < kMatches; ++i) {
        first_is_creator += games.start("fair" + std::to_string(i), test::fleet_a(), test::fleet_b()).first == 0 ? 1 : 0;
        // Spread matches over blocks so the block hash input varies too.
        if (i % 100 == 99) w.chain.produce_block();
    }
    // Binomial(10^4, 1/2): sigma = 50, allow 3 sigma.
    CHECK(std::abs(first_is_creator - kMatches / 2) <= 150);
}
