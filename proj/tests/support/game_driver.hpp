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

#include <set>

#include "support/nfp_harness.hpp"
#include "support/referee.hpp"

namespace nfp::test {

// Drives a match between two tokens through the signed path.
struct MatchDriver {
    NfpWorld& w;
    const Wallet* players[2];
    std::string tokens[2];
    std::string match_id;

    MatchDriver(NfpWorld& world, const Wallet& a, std::string ta, const Wallet& b, std::string tb)
        : w{world}, players{&a, &b}, tokens{std::move(ta), std::move(tb)} {}

    void open(chain::Uscrt wager) {
        match_id = w.exec(*players[0], {{"new_match", {{"token_id", tokens[0]}, {"wager", wager}}}}, wager).data().at("match_id");
        (void)w.exec(*players[1], {{"join_match", {{"token_id", tokens[1]}, {"match_id", match_id}}}}, wager).data();
    }

    void setup(const referee::Fleet& f0, const referee::Fleet& f1) {
        (void)w.exec(*players[0], {{"submit_setup", {{"token_id", tokens[0]}, {"match_id", match_id}, {"placements", referee::to_json(f0)}}}}).data();
        (void)w.exec(*players[1], {{"submit_setup", {{"token_id", tokens[1]}, {"match_id", match_id}, {"placements", referee::to_json(f1)}}}}).data();
    }

    Json view(int p) { return w.ask(*players[p], {{"match_state", {{"match_id", match_id}, {"token_id", tokens[p]}}}}).at("ok"); }

    int first() { return view(0).at("first") == "you" ? 0 : 1; }

    client::Outcome attack(int p, int x, int y, const Wallet* signer = nullptr, const client::TxOptions& opts = {}) {
        return w.exec(signer ? *signer : *players[p], {{"attack", {{"token_id", tokens[p]}, {"match_id", match_id}, {"x", x}, {"y", y}}}}, 0, opts);
    }

    // Plays until `winner` sinks the other fleet; the loser only fires at empty water.
    void play_out(int winner, const referee::Fleet& loser_fleet, const referee::Fleet& winner_fleet) {
        std::vector<referee::XY> targets;
        for (const auto& s : loser_fleet) {
            for (const auto& c : referee::ship_cells(s)) targets.push_back(c);
        }
        std::set<referee::XY> occupied;
        for (const auto& s : winner_fleet) {
            for (const auto& c : referee::ship_cells(s)) occupied.insert(c);
        }
        std::vector<referee::XY> water;
        for (int x = 0; x < 10; ++x) {
            for (int y = 0; y < 10; ++y) {
                if (!occupied.contains({x, y})) water.emplace_back(x, y);
            }
        }
        int turn = first();
        std::size_t wi = 0;
        std::size_t li = 0;
        while (wi < targets.size()) {
            const auto [x, y] = turn == winner ? targets[wi++] : water[li++];
            (void)attack(turn, x, y).data();
            turn = 1 - turn;
        }
    }
};

inline referee::Fleet fleet_a() {
    return {{"carrier", 0, 0, true}, {"battleship", 0, 2, true}, {"cruiser", 0, 4, false}, {"submarine", 5, 5, false}, {"destroyer", 8, 9, true}};
}

inline referee::Fleet fleet_b() {
    return {{"carrier", 9, 0, false}, {"battleship", 2, 9, true}, {"cruiser", 4, 4, true}, {"submarine", 1, 6, false}, {"destroyer", 6, 1, false}};
}

}  // namespace nfp::test
