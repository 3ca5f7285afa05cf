// Copyright 2026 The submdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBMDP_RENDER_HPP
#define SUBMDP_RENDER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "submdp/environments.hpp"
#include "submdp/nav_map.hpp"

namespace submdp {

/// Cells visited by a trajectory on a grid world, including the final cell.
std::vector<Cell> trajectory_cells(const GridWorld& grid, const Trajectory& traj);

/// Cells visited by applying R/D moves from `start`.
std::vector<Cell> cells_from_moves(Cell start, std::string_view moves);

/// One character per cell: '#' obstacle, '.' navigable, 'E' target,
/// '*' path. The path is drawn over targets.
std::string render_ascii(const NavMap& map, const std::vector<Cell>& path);

/// Binary PPM (P6), `scale` pixels per cell: red obstacles, blue navigable,
/// orange targets, green path.
std::vector<std::uint8_t> render_ppm(const NavMap& map, const std::vector<Cell>& path, int scale);

}  // namespace submdp

#endif  // SUBMDP_RENDER_HPP
