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

#include "submdp/environments.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "submdp/rng.hpp"

namespace submdp {

std::optional<StateId> GridWorld::state_at(Cell c) const {
  if (c.row < 1 || c.row > rows || c.col < 1 || c.col > cols) return std::nullopt;
  return state_of_cell[static_cast<std::size_t>((c.row - 1) * cols + (c.col - 1))];
}

GridWorld build_masked_grid(int rows, int cols, Cell start, Cell goal,
                            const std::vector<std::uint8_t>& navigable) {
  if (rows < 1 || cols < 1) throw Error("grid dimensions must be positive");
  if (navigable.size() != static_cast<std::size_t>(rows * cols)) throw Error("navigable mask has wrong size");
  auto idx = [cols](int r, int c) { return static_cast<std::size_t>((r - 1) * cols + (c - 1)); };
  auto inside = [&](Cell c) { return c.row >= 1 && c.row <= rows && c.col >= 1 && c.col <= cols; };
  if (!inside(start) || !inside(goal)) throw Error("start or goal outside the grid");
  if (!navigable[idx(start.row, start.col)] || !navigable[idx(goal.row, goal.col)]) {
    throw Error("start and goal must be navigable");
  }
  if (goal.row < start.row || goal.col < start.col) throw Error("goal unreachable under R/D moves");

  // Forward reachability from start, then backward co-reachability to goal.
  std::vector<std::uint8_t> fwd(navigable.size(), 0), bwd(navigable.size(), 0);
  fwd[idx(start.row, start.col)] = 1;
  for (int r = start.row; r <= goal.row; ++r) {
    for (int c = start.col; c <= goal.col; ++c) {
      if (!navigable[idx(r, c)] || (r == start.row && c == start.col)) continue;
      const bool from_up = r > start.row && fwd[idx(r - 1, c)];
      const bool from_left = c > start.col && fwd[idx(r, c - 1)];
      fwd[idx(r, c)] = from_up || from_left;
    }
  }
  if (!fwd[idx(goal.row, goal.col)]) throw Error("goal unreachable under R/D moves");
  bwd[idx(goal.row, goal.col)] = 1;
  for (int r = goal.row; r >= start.row; --r) {
    for (int c = goal.col; c >= start.col; --c) {
      if (!fwd[idx(r, c)] || (r == goal.row && c == goal.col)) continue;
      const bool to_down = r < goal.row && bwd[idx(r + 1, c)];
      const bool to_right = c < goal.col && bwd[idx(r, c + 1)];
      bwd[idx(r, c)] = to_down || to_right;
    }
  }

  GridWorld g;
  g.rows = rows;
  g.cols = cols;
  g.state_of_cell.assign(navigable.size(), std::nullopt);
  MdpBuilder b;
  b.add_action_name("R");
  b.add_action_name("D");
  for (int r = 1; r <= rows; ++r) {
    for (int c = 1; c <= cols; ++c) {
      if (!bwd[idx(r, c)]) continue;
      const bool is_goal = r == goal.row && c == goal.col;
      const int level = (r - start.row) + (c - start.col) + 1;
      const auto s = b.add_state(std::to_string(r) + "," + std::to_string(c), level, !is_goal);
      g.state_of_cell[idx(r, c)] = s;
      g.cell_of_state.push_back({r, c});
    }
  }
  for (StateId s = 0; s < g.cell_of_state.size(); ++s) {
    const Cell c = g.cell_of_state[s];
    if (c == goal) continue;
    if (c.col < goal.col) {
      if (const auto t = g.state_of_cell[idx(c.row, c.col + 1)]) b.add_transition(s, kRight, {{*t, 1.0}});
    }
    if (c.row < goal.row) {
      if (const auto t = g.state_of_cell[idx(c.row + 1, c.col)]) b.add_transition(s, kDown, {{*t, 1.0}});
    }
  }
  b.set_initial(*g.state_of_cell[idx(start.row, start.col)]);
  g.mdp = std::move(b).build();
  return g;
}

GridWorld build_grid(int n) {
  if (n < 2) throw Error("grid size must be >= 2");
  return build_masked_grid(n, n, {1, 1}, {n, n},
                           std::vector<std::uint8_t>(static_cast<std::size_t>(n * n), 1));
}

SyntheticInstance build_synthetic(const SyntheticSpec& spec) {
  if (spec.d < 2 || spec.d % 2 != 0) throw Error("synthetic d must be even and >= 2");
  if (spec.t < 1) throw Error("synthetic t must be >= 1");
  SyntheticInstance inst;
  inst.grid = build_grid(spec.n);
  const auto& mdp = inst.grid.mdp;
  const bool legal_only = spec.draw == SparseDraw::kLegalActions;
  std::vector<StateId> pool0;
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    if (!legal_only || mdp.acting(s)) pool0.push_back(s);
  }
  if (static_cast<std::size_t>(spec.t) > pool0.size()) {
    throw Error(legal_only ? "synthetic t exceeds the number of acting states"
                           : "synthetic t exceeds the number of cells");
  }

  CounterRng rng(spec.seed);
  const std::size_t m = mdp.ground_size();
  const auto d = static_cast<std::size_t>(spec.d);
  const std::size_t half = d / 2;
  std::vector<std::vector<double>> diags(m, std::vector<double>(d, 0.0));
  for (auto& diag : diags) {
    for (std::size_t i = 0; i < half; ++i) diag[i] = static_cast<double>(rng.below(11));
  }
  for (std::size_t i = half; i < d; ++i) {
    // Partial Fisher-Yates: the first t entries become t distinct states.
    std::vector<StateId> pool = pool0;
    for (std::size_t j = 0; j < static_cast<std::size_t>(spec.t); ++j) {
      const auto pick = j + rng.below(pool.size() - j);
      std::swap(pool[j], pool[pick]);
      const StateId s = pool[j];
      std::optional<Element> e;
      if (legal_only) {
        e = mdp.element(s, static_cast<std::uint32_t>(rng.below(mdp.num_actions(s))));
      } else {
        const auto a = static_cast<ActionId>(rng.below(2));
        if (mdp.acting(s) && mdp.slot_of(s, a) != kNoSlot) e = mdp.element_for(s, a);
      }
      if (!e) continue;
      std::fill(diags[*e].begin(), diags[*e].end(), 0.0);
      diags[*e][i] = 1.0;
      inst.replacements.emplace_back(static_cast<int>(i), *e);
    }
  }
  inst.objective = std::make_shared<LogDetObjective>(LogDetObjective::diagonal(diags, spec.lambda));
  return inst;
}

LeveledMdp build_cardinality_mdp(std::size_t n_items, std::size_t k) {
  if (n_items == 0 || k == 0) throw Error("cardinality instance needs n >= 1 and k >= 1");
  MdpBuilder b;
  for (std::size_t i = 0; i < n_items; ++i) b.add_action_name(std::to_string(i));
  std::vector<StateId> states;
  for (std::size_t h = 1; h <= k + 1; ++h) {
    states.push_back(b.add_state("s" + std::to_string(h), static_cast<int>(h), h <= k));
  }
  for (std::size_t h = 0; h < k; ++h) {
    for (std::size_t i = 0; i < n_items; ++i) {
      b.add_transition(states[h], static_cast<ActionId>(i), {{states[h + 1], 1.0}});
    }
  }
  return std::move(b).build();
}

std::shared_ptr<const CoverageObjective> lift_item_coverage(const LeveledMdp& mdp,
                                                            const CoverageObjective& items) {
  std::vector<std::vector<std::uint32_t>> covers(mdp.ground_size());
  for (Element e = 0; e < mdp.ground_size(); ++e) {
    const ActionId a = mdp.pair(e).action;
    if (a >= items.ground_size()) throw Error("action has no matching item");
    const auto c = items.cover(a);
    covers[e].assign(c.begin(), c.end());
  }
  const auto w = items.item_weights();
  return std::make_shared<CoverageObjective>(std::vector<double>(w.begin(), w.end()), std::move(covers));
}

CoverageObjective random_coverage(std::size_t elements, std::size_t universe, double density,
                                  std::uint64_t seed) {
  if (universe == 0) throw Error("coverage universe must be nonempty");
  CounterRng rng(seed);
  std::vector<double> weights(universe);
  for (auto& w : weights) w = 0.5 + rng.uniform();
  std::vector<std::vector<std::uint32_t>> covers(elements);
  for (auto& c : covers) {
    for (std::uint32_t u = 0; u < universe; ++u) {
      if (rng.uniform() < density) c.push_back(u);
    }
    if (c.empty()) c.push_back(static_cast<std::uint32_t>(rng.below(universe)));
  }
  return CoverageObjective(std::move(weights), std::move(covers));
}

double best_k_subset(const CoverageObjective& items, std::size_t k) {
  const std::size_t n = items.ground_size();
  k = std::min(k, n);
  std::vector<Element> pick(k);
  std::iota(pick.begin(), pick.end(), Element{0});
  double best = items.evaluate(std::span<const Element>(pick));
  // Lexicographic walk over k-combinations.
  while (true) {
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    best = std::max(best, items.evaluate(std::span<const Element>(pick)));
  }
  return best;
}

LeveledMdp random_leveled_mdp(const RandomMdpSpec& spec) {
  if (spec.levels < 2 || spec.max_width < 1 || spec.max_actions < 1) {
    throw Error("random MDP needs levels >= 2, max_width >= 1, max_actions >= 1");
  }
  CounterRng rng(spec.seed);
  MdpBuilder b;
  for (int a = 0; a < spec.max_actions; ++a) b.add_action_name("a" + std::to_string(a));
  std::vector<std::vector<StateId>> level_states(static_cast<std::size_t>(spec.levels));
  for (int h = 1; h <= spec.levels; ++h) {
    const int width = h == 1 ? 1 : 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.max_width)));
    for (int i = 0; i < width; ++i) {
      level_states[static_cast<std::size_t>(h - 1)].push_back(
          b.add_state("L" + std::to_string(h) + "_" + std::to_string(i), h, h < spec.levels));
    }
  }
  for (int h = 1; h < spec.levels; ++h) {
    const auto& next = level_states[static_cast<std::size_t>(h)];
    for (StateId s : level_states[static_cast<std::size_t>(h - 1)]) {
      const int n_actions = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.max_actions)));
      // A random subset of action ids of size n_actions.
      std::vector<ActionId> ids(static_cast<std::size_t>(spec.max_actions));
      std::iota(ids.begin(), ids.end(), ActionId{0});
      for (int j = 0; j < n_actions; ++j) {
        const auto pick = static_cast<std::size_t>(j) + rng.below(ids.size() - static_cast<std::size_t>(j));
        std::swap(ids[static_cast<std::size_t>(j)], ids[pick]);
      }
      for (int j = 0; j < n_actions; ++j) {
        std::vector<Successor> succ;
        if (spec.deterministic || next.size() == 1) {
          succ.push_back({next[rng.below(next.size())], 1.0});
        } else {
          const std::size_t fan = 1 + rng.below(std::min<std::size_t>(3, next.size()));
          std::vector<StateId> pool = next;
          double total = 0.0;
          for (std::size_t f = 0; f < fan; ++f) {
            const auto pick = f + rng.below(pool.size() - f);
            std::swap(pool[f], pool[pick]);
            const double w = 0.1 + rng.uniform();
            succ.push_back({pool[f], w});
            total += w;
          }
          double acc = 0.0;
          for (std::size_t f = 0; f + 1 < succ.size(); ++f) {
            succ[f].prob /= total;
            acc += succ[f].prob;
          }
          succ.back().prob = 1.0 - acc;
        }
        b.add_transition(s, ids[static_cast<std::size_t>(j)], std::move(succ));
      }
    }
  }
  return std::move(b).build();
}

AdditiveObjective random_additive(std::size_t m, double scale, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<double> w(m);
  for (auto& v : w) v = scale * rng.uniform();
  return AdditiveObjective(std::move(w));
}

}  // namespace submdp
