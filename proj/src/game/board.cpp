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

#include <nfp/game/board.hpp>

#include <algorithm>

namespace nfp::game {

int length(Vehicle v) {
    switch (v) {
        case Vehicle::kCarrier: return 5;
        case Vehicle::kBattleship: return 4;
        case Vehicle::kCruiser: return 3;
        case Vehicle::kSubmarine: return 3;
        case Vehicle::kDestroyer: return 2;
    }
    return 0;
}

std::string_view name(Vehicle v) {
    switch (v) {
        case Vehicle::kCarrier: return "carrier";
        case Vehicle::kBattleship: return "battleship";
        case Vehicle::kCruiser: return "cruiser";
        case Vehicle::kSubmarine: return "submarine";
        case Vehicle::kDestroyer: return "destroyer";
    }
    return {};
}

Vehicle vehicle_from_name(std::string_view s) {
    for (auto v : kVehicles) {
        if (name(v) == s) return v;
    }
    throw PlacementError("unknown vehicle type '" + std::string{s} + "'");
}

std::vector<Cell> Placement::cells() const {
    std::vector<Cell> out;
    for (int i = 0; i < length(vehicle); ++i) {
        out.push_back(orientation == Orientation::kHorizontal ? Cell{origin.x + i, origin.y} : Cell{origin.x, origin.y + i});
    }
    return out;
}

bool Placement::in_grid() const {
    const auto cs = cells();
    return std::all_of(cs.begin(), cs.end(), [](const Cell& c) { return c.in_grid(); });
}

void to_json(nlohmann::json& j, const Placement& p) {
    j = nlohmann::json{{"type", name(p.vehicle)},
                       {"x", p.origin.x},
                       {"y", p.origin.y},
                       {"orientation", p.orientation == Orientation::kHorizontal ? "horizontal" : "vertical"}};
}

void from_json(const nlohmann::json& j, Placement& p) {
    try {
        p.vehicle = vehicle_from_name(j.at("type").get<std::string>());
        p.origin = Cell{j.at("x").get<int>(), j.at("y").get<int>()};
        const auto o = j.at("orientation").get<std::string>();
        if (o == "horizontal") {
            p.orientation = Orientation::kHorizontal;
        } else if (o == "vertical") {
            p.orientation = Orientation::kVertical;
        } else {
            throw PlacementError("orientation must be horizontal or vertical");
        }
    } catch (const nlohmann::json::exception& e) {
        throw PlacementError(std::string{"malformed placement: "} + e.what());
    }
}

Board Board::from_placements(std::vector<Placement> placements) {
    if (placements.size() != kVehicles.size()) throw PlacementError("a board needs exactly 5 placements");
    Board b;
    for (auto v : kVehicles) {
        const auto n = std::count_if(placements.begin(), placements.end(), [v](const Placement& p) { return p.vehicle == v; });
        if (n != 1) throw PlacementError("vehicle " + std::string{name(v)} + " must be placed exactly once");
    }
    std::sort(placements.begin(), placements.end(), [](const Placement& a, const Placement& b) { return a.vehicle < b.vehicle; });
    for (const auto& p : placements) {
        if (!p.in_grid()) throw PlacementError(std::string{name(p.vehicle)} + " extends outside the grid");
        for (const auto& c : p.cells()) {
            if (b.cells_[c.index()]) throw PlacementError(std::string{name(p.vehicle)} + " overlaps " + std::string{name(*b.cells_[c.index()])});
            b.cells_[c.index()] = p.vehicle;
        }
    }
    b.placements_ = std::move(placements);
    return b;
}

const Placement& Board::placement_of(Vehicle v) const { return placements_[static_cast<std::size_t>(v)]; }

std::string Board::encode() const {
    std::string out;
    for (const auto& p : placements_) {
        out += static_cast<char>('0' + p.origin.x);
        out += static_cast<char>('0' + p.origin.y);
        out += p.orientation == Orientation::kHorizontal ? 'h' : 'v';
    }
    return out;
}

Board Board::decode(std::string_view packed) {
    if (packed.size() != 3 * kVehicles.size()) throw PlacementError("packed board has the wrong length");
    std::vector<Placement> placements;
    for (std::size_t i = 0; i < kVehicles.size(); ++i) {
        const char x = packed[3 * i];
        const char y = packed[3 * i + 1];
        const char o = packed[3 * i + 2];
        if (x < '0' || x > '9' || y < '0' || y > '9' || (o != 'h' && o != 'v')) throw PlacementError("packed board is malformed");
        placements.push_back({kVehicles[i], {x - '0', y - '0'}, o == 'h' ? Orientation::kHorizontal : Orientation::kVertical});
    }
    return from_placements(std::move(placements));
}

int count_legal_placements(Vehicle v) {
    int n = 0;
    for (int i = 0; i < kCellCount; ++i) {
        for (auto o : {Orientation::kHorizontal, Orientation::kVertical}) {
            if (Placement{v, Cell::from_index(i), o}.in_grid()) ++n;
        }
    }
    return n;
}

}  // namespace nfp::game
