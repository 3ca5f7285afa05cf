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

#ifndef SUBMDP_DP_SOLVER_HPP
#define SUBMDP_DP_SOLVER_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "submdp/mdp.hpp"
#include "submdp/objective.hpp"

namespace submdp {

/// Per-element linear reward. Entries may be negative.
using WeightVector = std::vector<double>;

struct LinearSolution {
  DeterministicPolicy policy;
  double value = 0.0;
};

/// Backward induction for the additive reward sum_e w(e) 1{e visited}.
/// Returns max over deterministic policies of x(pi) . w; ties go to the
/// lowest action slot.
LinearSolution solve_linear(const LeveledMdp& mdp, std::span<const double> w);

/// x . w
double linear_value(const MarginalVector& x, std::span<const double> w);

/// Number of root-to-leaf paths of a deterministic MDP, saturating at `cap`.
std::size_t count_paths(const LeveledMdp& mdp, std::size_t cap);

/// Visits every trajectory of a deterministic MDP in depth-first slot order.
void for_each_path(const LeveledMdp& mdp, const std::function<void(const Trajectory&)>& visit);

/// Policy that follows `traj` and takes the first legal action elsewhere.
DeterministicPolicy policy_along(const LeveledMdp& mdp, const Trajectory& traj);

struct PlanResult {
  DeterministicPolicy policy;
  Trajectory trajectory;
  double value = 0.0;
};

inline constexpr std::size_t kMaxEnumeratedPaths = 1'000'000;

/// Exhaustive search over trajectories of a deterministic MDP. Throws
/// "enumeration infeasible" above max_paths.
PlanResult brute_force_plan(const LeveledMdp& mdp, const Objective& obj,
                            std::size_t max_paths = kMaxEnumeratedPaths);

}  // namespace submdp

#endif  // SUBMDP_DP_SOLVER_HPP
