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

#ifndef SUBMDP_NAV_MAP_HPP
#define SUBMDP_NAV_MAP_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "submdp/environments.hpp"

namespace submdp {

/// Occupancy grid with exploration targets. Cells are 1-based.
struct NavMap {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> obstacle;  // row-major
  std::vector<Cell> targets;
  Cell start{1, 1};
  double cell_size_cm = 20.0;
  double vision_range = 3.0;

  bool in_bounds(Cell c) const { return c.row >= 1 && c.row <= rows && c.col >= 1 && c.col <= cols; }
  bool navigable(Cell c) const;
  Cell goal() const { return {rows, cols}; }
  std::vector<std::uint8_t> navigable_mask() const;
};

/// ASCII map: '#' obstacle, '.' navigable, 'E' target on a navigable cell,
/// 'X' target on an obstacle, 'S' start. Lines starting with ';' are
/// comments; a `targets: (r,c) ...` line adds targets by coordinate.
NavMap read_nav_map(std::istream& in);
void write_nav_map(std::ostream& out, const NavMap& map);

/// Cells whose interiors the segment between the two cell centers touches,
/// including both endpoints and both neighbours at exact corner crossings.
std::vector<Cell> supercover_line(Cell from, Cell to);

/// True iff `to` is 4-adjacent to `from`, or the center distance is below the
/// vision range and every cell on the line except `from` is navigable.
bool visible(const NavMap& map, Cell from, Cell to);

struct NavInstance {
  GridWorld grid;
  std::shared_ptr<const LogDetObjective> objective;
};

/// Right/down MDP over navigable cells; reward(s, a) = diag(visible(s, t_i)).
NavInstance build_nav(const NavMap& map, double lambda);

/// Random rectangular obstacle blocks on an n x n map, redrawn until a
/// right/down path from (1,1) to (n,n) exists.
NavMap generate_nav_map(int n, std::uint64_t seed, double obstacle_fraction = 0.25);

/// `count` distinct navigable cells chosen uniformly.
std::vector<Cell> random_targets(const NavMap& map, std::size_t count, std::uint64_t seed);

}  // namespace submdp

#endif  // SUBMDP_NAV_MAP_HPP
