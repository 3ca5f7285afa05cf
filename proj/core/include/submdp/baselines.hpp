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

#ifndef SUBMDP_BASELINES_HPP
#define SUBMDP_BASELINES_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "submdp/mdp.hpp"
#include "submdp/objective.hpp"

namespace submdp {

/// Up to l primitive actions over consecutive levels, realized along the
/// deterministic path from its start state. Shorter only where the episode
/// ends first.
struct MacroAction {
  std::vector<std::uint32_t> slots;
  std::vector<Element> block;
  /// State reached after the block; nullopt when the episode ended inside it.
  std::optional<StateId> end;
};

/// Every feasible macro-action of length l from s, in lexicographic slot order.
std::vector<MacroAction> macro_actions(const LeveledMdp& mdp, StateId s, std::size_t l);

struct BaselineResult {
  DeterministicPolicy policy;
  Trajectory trajectory;
  /// True objective of the realized trajectory.
  double value = 0.0;
  /// What the baseline optimized (sum of block rewards, or last greedy score).
  double surrogate = 0.0;
};

/// DP in the l-step augmented MDP where a macro-action earns f(block) alone,
/// e.g. ln det(sum_block R + lambda I). Log-det and additive objectives only.
BaselineResult dp_baseline(const LeveledMdp& mdp, const Objective& obj, std::size_t l);

/// Walks forward choosing at each macro-step the block that maximizes
/// f(visited + block); ties go to the lexicographically smallest block.
BaselineResult greedy_baseline(const LeveledMdp& mdp, const Objective& obj, std::size_t l);

}  // namespace submdp

#endif  // SUBMDP_BASELINES_HPP
