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

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <nfp/crypto/bytes.hpp>

namespace nfp::game {

inline constexpr int kGridSize = 10;
inline constexpr int kCellCount = kGridSize * kGridSize;

enum class Vehicle { kCarrier, kBattleship, kCruiser, kSubmarine, kDestroyer };

inline constexpr std::array<Vehicle, 5> kVehicles{Vehicle::kCarrier, Vehicle::kBattleship, Vehicle::kCruiser, Vehicle::kSubmarine,
                                                 Vehicle::kDestroyer};

//! Sum of all vehicle lengths.
inline constexpr int kOccupiedCells = 17;

[[nodiscard]] int length(Vehicle v);
[[nodiscard]] std::string_view name(Vehicle v);
//! Throws PlacementError for unknown names.
[[nodiscard]] Vehicle vehicle_from_name(std::string_view s);

enum class Orientation { kHorizontal, kVertical };

struct Cell {
    int x{0};
    int y{0};

    [[nodiscard]] bool in_grid() const { return x >= 0 && x < kGridSize && y >= 0 && y < kGridSize; }
    [[nodiscard]] int index() const { return y * kGridSize + x; }
    static Cell from_index(int i) { return Cell{i % kGridSize, i / kGridSize}; }

    auto operator<=>(const Cell&) const = default;
};

class PlacementError : public Error {
  public:
    using Error::Error;
};

struct Placement {
    Vehicle vehicle{Vehicle::kCarrier};
    Cell origin;
    Orientation orientation{Orientation::kHorizontal};

    //! Cells covered, origin first. May fall outside the grid.
    [[nodiscard]] std::vector<Cell> cells() const;
    [[nodiscard]] bool in_grid() const;

    bool operator==(const Placement&) const = default;
};

void to_json(nlohmann::json& j, const Placement& p);
//! Throws PlacementError on malformed input.
void from_json(const nlohmann::json& j, Placement& p);

//! A validated fleet: exactly one placement per vehicle, all in the grid, no overlap.
class Board {
  public:
    //! Throws PlacementError naming the first violated rule.
    static Board from_placements(std::vector<Placement> placements);

    [[nodiscard]] const std::vector<Placement>& placements() const { return placements_; }
    [[nodiscard]] std::optional<Vehicle> at(Cell c) const { return cells_[c.index()]; }
    [[nodiscard]] const Placement& placement_of(Vehicle v) const;

    //! Fixed 15-byte form (x, y, 'h'|'v' per vehicle) so stored size never depends on the layout.
    [[nodiscard]] std::string encode() const;
    //! Throws PlacementError on anything encode() could not have produced.
    static Board decode(std::string_view packed);

  private:
    std::vector<Placement> placements_;  // in kVehicles order
    std::array<std::optional<Vehicle>, kCellCount> cells_{};
};

//! Number of positions a single vehicle can take on an empty grid.
[[nodiscard]] int count_legal_placements(Vehicle v);

}  // namespace nfp::game
