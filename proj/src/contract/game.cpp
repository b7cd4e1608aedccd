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

#include <algorithm>

#include <nfp/crypto/hash.hpp>
#include <nfp/game/board.hpp>

#include "state.hpp"

namespace nfp::contract::detail {

namespace {

    using game::Board;
    using game::Cell;

    constexpr char kUnknown = '.';
    constexpr char kHit = 'h';
    constexpr char kMiss = 'm';

    std::string match_key(const std::string& id) { return "match/" + id; }
    std::string board_key(const std::string& id, int p) { return "match/" + id + "/board/" + std::to_string(p); }
    std::string shots_key(const std::string& id, int p) { return "match/" + id + "/shots/" + std::to_string(p); }
    std::string log_key(const std::string& id, std::uint64_t n) { return "match/" + id + "/log/" + std::to_string(n); }
    std::string busy_key(const std::string& token_id) { return "token_match/" + token_id; }

    Json load_match(ContractContext& ctx, const std::string& id) {
        auto m = ctx.get_json(match_key(id));
        if (!m) throw chain::not_found("match");
        return *m;
    }

    //! Index of the participant holding `token_id`, or -1.
    int participant(const Json& m, const std::string& token_id) {
        for (int i = 0; i < 2; ++i) {
            const auto& p = m.at("players").at(i);
            if (!p.is_null() && p.at("token_id") == token_id) return i;
        }
        return -1;
    }

    Board load_board(ContractContext& ctx, const std::string& id, int p) {
        return Board::decode(to_string(*ctx.get(board_key(id, p))));
    }

    std::string load_shots(ContractContext& ctx, const std::string& id, int p) { return to_string(*ctx.get(shots_key(id, p))); }

    void require_funds(ContractContext& ctx, Uscrt wager) {
        if (ctx.env().funds != wager) {
            throw ContractError("wrong_funds", "attached funds " + std::to_string(ctx.env().funds) + " must equal the wager " + std::to_string(wager));
        }
    }

    void require_idle(ContractContext& ctx, const std::string& token_id) {
        if (ctx.get(busy_key(token_id))) throw ContractError("token_busy", "token already has an active match");
    }

    Json cells_json(const std::vector<Cell>& cells) {
        Json out = Json::array();
        for (const auto& c : cells) out.push_back(Json::array({c.x, c.y}));
        return out;
    }

    //! Opponent vehicles whose every cell appears as a hit in `shots`.
    Json destroyed_vehicles(const Board& board, const std::string& shots) {
        Json out = Json::array();
        for (const auto& pl : board.placements()) {
            const auto cells = pl.cells();
            if (std::all_of(cells.begin(), cells.end(), [&](const Cell& c) { return shots[c.index()] == kHit; })) {
                out.push_back(Json{{"type", game::name(pl.vehicle)}, {"cells", cells_json(cells)}});
            }
        }
        return out;
    }

    Json exec_new_match(State& s, const Json& args) {
        auto& ctx = s.ctx();
        const std::string token_id = str_field(args, "token_id");
        s.authorize(token_id, "new_match");
        const Uscrt wager = args.value("wager", Uscrt{0});
        require_funds(ctx, wager);
        require_idle(ctx, token_id);

        const std::uint64_t counter = ctx.get_json("match_counter").value_or(Json(0)).get<std::uint64_t>();
        ctx.set_json("match_counter", counter + 1);
        const auto digest = crypto::sha256(concat({ctx.seed(), as_bytes("match"), be64(counter)}));
        const std::string id = to_hex(ByteView{digest}.first(16));

        ctx.set_json(match_key(id), Json{{"match_id", id},
                                         {"phase", "open"},
                                         {"wager", wager},
                                         {"created_height", ctx.env().height},
                                         {"players", Json::array({Json{{"token_id", token_id}, {"address", ctx.sender().str()}}, nullptr})},
                                         {"setup", Json::array({false, false})},
                                         {"first", nullptr},
                                         {"turn", nullptr},
                                         {"attacks", 0},
                                         {"hits", Json::array({0, 0})},
                                         {"winner", nullptr}});
        ctx.set_json(busy_key(token_id), id);
        Json lobby = ctx.get_json("lobby").value_or(Json::array());
        lobby.push_back(id);
        ctx.set_json("lobby", lobby);
        return Json{{"match_id", id}};
    }

    Json exec_join_match(State& s, const Json& args) {
        auto& ctx = s.ctx();
        const std::string token_id = str_field(args, "token_id");
        s.authorize(token_id, "join_match");
        const std::string id = str_field(args, "match_id");
        Json m = load_match(ctx, id);
        if (m.at("phase") != "open") throw ContractError("wrong_phase", "match is not open");
        if (participant(m, token_id) == 0) throw chain::invalid("cannot join your own match");
        require_funds(ctx, m.at("wager").get<Uscrt>());
        require_idle(ctx, token_id);

        m["players"][1] = Json{{"token_id", token_id}, {"address", ctx.sender().str()}};
        m["phase"] = "setup";
        ctx.set_json(match_key(id), m);
        ctx.set_json(busy_key(token_id), id);
        Json lobby = ctx.get_json("lobby").value_or(Json::array());
        lobby.erase(std::remove(lobby.begin(), lobby.end(), Json(id)), lobby.end());
        ctx.set_json("lobby", lobby);
        for (int p = 0; p < 2; ++p) {
            s.push_notification(m["players"][p]["token_id"].get<std::string>(), Json{{"event", "match_joined"}, {"match_id", id}});
        }
        return Json{{"match_id", id}, {"phase", "setup"}};
    }

    Json exec_submit_setup(State& s, const Json& args) {
        auto& ctx = s.ctx();
        const std::string token_id = str_field(args, "token_id");
        s.authorize(token_id, "submit_setup");
        const std::string id = str_field(args, "match_id");
        Json m = load_match(ctx, id);
        const int p = participant(m, token_id);
        if (p < 0) throw chain::unauthorized();
        if (m.at("phase") != "setup") throw ContractError("wrong_phase", "match is not in setup");
        if (m.at("setup").at(p).get<bool>()) throw ContractError("already_submitted", "setup already submitted");

        const Board board = [&] {
            try {
                if (!args.contains("placements") || !args.at("placements").is_array()) throw game::PlacementError("placements must be a list");
                return Board::from_placements(args.at("placements").get<std::vector<game::Placement>>());
            } catch (const game::PlacementError& e) {
                throw ContractError("invalid_board", e.what());
            }
        }();
        ctx.set(board_key(id, p), as_bytes(board.encode()));
        m["setup"][p] = true;

        if (m.at("setup").at(1 - p).get<bool>()) {
            const auto digest = crypto::sha256(concat({ctx.seed(), as_bytes(id), ctx.env().block_hash}));
            const int first = digest.back() & 1;
            m["phase"] = "playing";
            m["first"] = first;
            m["turn"] = first;
            const std::string blank(game::kCellCount, kUnknown);
            ctx.set(shots_key(id, 0), as_bytes(blank));
            ctx.set(shots_key(id, 1), as_bytes(blank));
            for (int q = 0; q < 2; ++q) {
                s.push_notification(m["players"][q]["token_id"].get<std::string>(),
                                    Json{{"event", "match_started"}, {"match_id", id}, {"your_turn", q == first}});
            }
        }
        ctx.set_json(match_key(id), m);
        return Json{{"match_id", id}, {"phase", m.at("phase")}};
    }

    Json exec_attack(State& s, const Json& args) {
        auto& ctx = s.ctx();
        const std::string token_id = str_field(args, "token_id");
        s.authorize(token_id, "attack");
        const std::string id = str_field(args, "match_id");
        Json m = load_match(ctx, id);
        const int p = participant(m, token_id);
        if (p < 0) throw chain::unauthorized();
        if (m.at("phase") != "playing") throw ContractError("wrong_phase", "match is not being played");
        if (m.at("turn").get<int>() != p) throw ContractError("not_your_turn", "it is the opponent's turn");
        const Cell cell{args.at("x").get<int>(), args.at("y").get<int>()};
        if (!cell.in_grid()) throw chain::invalid("cell is outside the grid");
        std::string shots = load_shots(ctx, id, p);
        if (shots[cell.index()] != kUnknown) throw ContractError("already_attacked", "cell was already attacked");

        const int opp = 1 - p;
        const Board board = load_board(ctx, id, opp);
        const auto vehicle = board.at(cell);
        shots[cell.index()] = vehicle ? kHit : kMiss;
        ctx.set(shots_key(id, p), as_bytes(shots));

        Json result{{"hit", vehicle.has_value()}, {"destroyed", nullptr}, {"game_over", false}};
        if (vehicle) {
            const auto cells = board.placement_of(*vehicle).cells();
            if (std::all_of(cells.begin(), cells.end(), [&](const Cell& c) { return shots[c.index()] == kHit; })) {
                result["destroyed"] = Json{{"type", game::name(*vehicle)}, {"cells", cells_json(cells)}};
            }
            m["hits"][p] = m["hits"][p].get<int>() + 1;
        }
        const std::uint64_t n = m.at("attacks").get<std::uint64_t>();
        ctx.set_json(log_key(id, n), Json{{"p", p}, {"x", cell.x}, {"y", cell.y}, {"hit", vehicle.has_value()}, {"h", ctx.env().height}});
        m["attacks"] = n + 1;

        const std::string opp_token = m["players"][opp]["token_id"].get<std::string>();
        s.push_notification(opp_token, Json{{"event", "attacked"}, {"match_id", id}, {"x", cell.x}, {"y", cell.y}, {"hit", vehicle.has_value()}});

        if (m["hits"][p].get<int>() == game::kOccupiedCells) {
            m["phase"] = "finished";
            m["winner"] = p;
            m["turn"] = nullptr;
            result["game_over"] = true;
            const Uscrt pot = 2 * m.at("wager").get<Uscrt>();
            if (pot > 0) ctx.send(s.owner_of(token_id), pot);
            ctx.remove(busy_key(token_id));
            ctx.remove(busy_key(opp_token));
            s.publish_token_package(token_id, "trophies",
                                    as_bytes(chain::canonical(Json{{"match_id", id}, {"wager", m.at("wager")}, {"height", ctx.env().height}})),
                                    {"latest"});
            for (const auto& t : {token_id, opp_token}) {
                s.push_notification(t, Json{{"event", "match_finished"}, {"match_id", id}, {"winner", token_id}});
            }
        } else {
            m["turn"] = opp;
        }
        ctx.set_json(match_key(id), m);
        return result;
    }

    Json player_view(State& s, const Json& m, int me) {
        auto& ctx = s.ctx();
        const std::string id = m.at("match_id").get<std::string>();
        const int opp = 1 - me;
        const std::string phase = m.at("phase").get<std::string>();
        auto relative = [me](const Json& idx) -> Json {
            if (idx.is_null()) return nullptr;
            return idx.get<int>() == me ? "you" : "opponent";
        };

        Json my_board{{"placements", nullptr}, {"hits_received", Json::array()}, {"misses_received", Json::array()}};
        Json opp_grid{{"hits", Json::array()}, {"misses", Json::array()}, {"destroyed", Json::array()}};
        Json log = Json::array();
        if (m.at("setup").at(me).get<bool>()) my_board["placements"] = load_board(ctx, id, me).placements();
        if (phase == "playing" || phase == "finished") {
            const std::string mine = load_shots(ctx, id, me);
            const std::string theirs = load_shots(ctx, id, opp);
            for (int i = 0; i < game::kCellCount; ++i) {
                const Cell c = Cell::from_index(i);
                const Json xy = Json::array({c.x, c.y});
                if (mine[i] == kHit) opp_grid["hits"].push_back(xy);
                if (mine[i] == kMiss) opp_grid["misses"].push_back(xy);
                if (theirs[i] == kHit) my_board["hits_received"].push_back(xy);
                if (theirs[i] == kMiss) my_board["misses_received"].push_back(xy);
            }
            opp_grid["destroyed"] = destroyed_vehicles(load_board(ctx, id, opp), mine);
            const auto n = m.at("attacks").get<std::uint64_t>();
            for (std::uint64_t i = 0; i < n; ++i) {
                const Json e = *ctx.get_json(log_key(id, i));
                log.push_back(Json{{"by", relative(e.at("p"))}, {"x", e.at("x")}, {"y", e.at("y")}, {"hit", e.at("hit")}, {"height", e.at("h")}});
            }
        }
        return Json{{"match_id", id},
                    {"phase", phase},
                    {"wager", m.at("wager")},
                    {"turn", relative(m.at("turn"))},
                    {"first", relative(m.at("first"))},
                    {"winner", relative(m.at("winner"))},
                    {"opponent_joined", !m.at("players").at(1).is_null()},
                    {"my_setup_done", m.at("setup").at(me)},
                    {"opponent_setup_done", m.at("setup").at(opp)},
                    {"my_board", my_board},
                    {"opponent_grid", opp_grid},
                    {"log", log}};
    }

}  // namespace

Json execute_game(State& s, const std::string& method, const Json& args) {
    if (method == "new_match") return exec_new_match(s, args);
    if (method == "join_match") return exec_join_match(s, args);
    if (method == "submit_setup") return exec_submit_setup(s, args);
    return exec_attack(s, args);
}

Json query_game(State& s, const Viewer& viewer, const std::string& method, const Json& args) {
    auto& ctx = s.ctx();
    if (method == "list_open_matches") {
        Json out = Json::array();
        for (const auto& id : ctx.get_json("lobby").value_or(Json::array())) {
            const Json m = load_match(ctx, id.get<std::string>());
            out.push_back(Json{{"match_id", id}, {"wager", m.at("wager")}, {"created_height", m.at("created_height")}});
        }
        return Json{{"matches", out}};
    }
    if (!viewer.has(permission::kGameState)) throw chain::unauthorized();
    const std::string token_id = str_field(args, "token_id");
    const auto m = ctx.get_json(match_key(str_field(args, "match_id")));
    if (!m) throw chain::unauthorized();
    const int me = participant(*m, token_id);
    if (me < 0 || !s.can_view(token_id, *viewer.address)) throw chain::unauthorized();
    return player_view(s, *m, me);
}

}  // namespace nfp::contract::detail
