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

#ifndef SUBMDP_ENVIRONMENTS_HPP
#define SUBMDP_ENVIRONMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "submdp/mdp.hpp"
#include "submdp/objective.hpp"

namespace submdp {

/// 1-based grid coordinates.
struct Cell {
  int row = 1;
  int col = 1;
  friend bool operator==(const Cell&, const Cell&) = default;
};

inline constexpr ActionId kRight = 0;
inline constexpr ActionId kDown = 1;

/// Right/down grid MDP with its cell layout. Cell (i, j) sits on level
/// (i - start.row) + (j - start.col) + 1; the goal cell does not act.
struct GridWorld {
  LeveledMdp mdp;
  int rows = 0;
  int cols = 0;
  std::vector<Cell> cell_of_state;
  std::vector<std::optional<StateId>> state_of_cell;  // row-major, rows x cols

  std::optional<StateId> state_at(Cell c) const;
  Cell cell(StateId s) const { return cell_of_state.at(s); }
};

/// Full n x n grid from (1,1) to (n,n): 2n - 1 levels, 2n - 2 pairs per
/// trajectory.
GridWorld build_grid(int n);

/// Grid restricted to navigable cells (row-major mask) that lie on some
/// right/down path from start to goal. Throws "goal unreachable under R/D
/// moves" when no such path exists.
GridWorld build_masked_grid(int rows, int cols, Cell start, Cell goal,
                            const std::vector<std::uint8_t>& navigable);

/// How sparse replacements pick (state, action).
/// kGridActions: t distinct cells out of all n*n, each with an action drawn
/// from {R, D}; a draw that leaves the grid (or lands on the goal) names no
/// legal pair and replaces nothing.
/// kLegalActions: t distinct acting cells, action drawn from the cell's legal
/// moves, so every draw lands.
enum class SparseDraw { kGridActions, kLegalActions };

struct SyntheticSpec {
  int n = 10;
  int d = 10;
  int t = 2;
  double lambda = 1e-5;
  std::uint64_t seed = 0;
  SparseDraw draw = SparseDraw::kGridActions;
};

struct SyntheticInstance {
  GridWorld grid;
  std::shared_ptr<const LogDetObjective> objective;
  /// (sparse index, element) of every replacement, in application order.
  std::vector<std::pair<int, Element>> replacements;
};

/// Diagonal log-det rewards: the first d/2 entries uniform on {0..10}, the
/// rest zero; then for each sparse index i, t pairs at distinct states get
/// the matrix e_i e_i^T.
SyntheticInstance build_synthetic(const SyntheticSpec& spec);

/// Cardinality-constrained selection as an MDP: k acting levels, each
/// offering actions 0..n-1, followed by one terminal state.
LeveledMdp build_cardinality_mdp(std::size_t n_items, std::size_t k);

/// Lifts a coverage function over items to pairs: the pair (s_h, i) covers
/// what item i covers.
std::shared_ptr<const CoverageObjective> lift_item_coverage(const LeveledMdp& mdp,
                                                            const CoverageObjective& items);

/// Random weighted coverage over `elements` ground elements and `universe`
/// items; each element covers each item with probability `density`
/// (at least one item), weights uniform on [0.5, 1.5).
CoverageObjective random_coverage(std::size_t elements, std::size_t universe, double density,
                                  std::uint64_t seed);

/// Best value of `items` over all k-subsets.
double best_k_subset(const CoverageObjective& items, std::size_t k);

struct RandomMdpSpec {
  int levels = 4;
  int max_width = 3;
  int max_actions = 2;
  bool deterministic = true;
  std::uint64_t seed = 0;
};

/// Random leveled MDP: one initial state, 1..max_width states on every
/// deeper level, the last level terminal.
LeveledMdp random_leveled_mdp(const RandomMdpSpec& spec);

/// Additive objective with i.i.d. uniform [0, scale) weights.
AdditiveObjective random_additive(std::size_t m, double scale, std::uint64_t seed);

}  // namespace submdp

#endif  // SUBMDP_ENVIRONMENTS_HPP
