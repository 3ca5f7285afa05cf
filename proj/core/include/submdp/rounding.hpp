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

#ifndef SUBMDP_ROUNDING_HPP
#define SUBMDP_ROUNDING_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "submdp/mdp.hpp"
#include "submdp/objective.hpp"

namespace submdp {

inline constexpr double kFlowTolerance = 1e-9;
/// Flows at or below this are treated as zero.
inline constexpr double kFlowZero = 1e-12;

/// Describes the first flow-conservation violation of y on a deterministic
/// MDP, or nullopt when y is a valid unit flow from the initial state.
std::optional<std::string> flow_violation(const LeveledMdp& mdp, const MarginalVector& y,
                                          double tol = kFlowTolerance);

struct HighResult {
  DeterministicPolicy policy;
  std::size_t member = 0;
  double value = 0.0;
  std::vector<double> member_values;
};

/// Picks the mixture member with the highest objective (earliest on ties).
/// Stochastic MDPs score members with `eval_samples` rollouts each.
HighResult round_high(const LeveledMdp& mdp, const Objective& obj, const MixturePolicy& mixture,
                      std::size_t eval_samples = 100, std::uint64_t seed = 0);

struct SubOptions {
  /// Monte-Carlo samples per candidate when F has no exact route.
  std::size_t round_samples = 100;
  std::uint64_t seed = 0;
  /// Use the closed form or enumeration of F when available.
  bool allow_exact = true;
  /// Record F before each shift (exact route only).
  bool record_trace = false;
};

struct SubShift {
  StateId branch = 0;
  std::vector<Element> donor;
  std::vector<Element> receiver;
  double amount = 0.0;
  bool exact = false;
  /// F at the chosen candidate.
  double value_after = 0.0;
  /// F before the shift; set when tracing with exact F.
  std::optional<double> value_before;
};

struct SubResult {
  DeterministicPolicy policy;
  MarginalVector y;
  std::size_t shifts = 0;
  std::vector<SubShift> trace;
};

/// Sub-trajectory pipage rounding of a fractional flow on a deterministic MDP.
/// Each round finds the first branching state, traces the two heaviest
/// branches until they meet again or the horizon ends, and moves the
/// bottleneck mass of one branch onto the other, keeping the direction with
/// the larger multilinear value. Ends with a 0/1 flow after at most
/// |ground set| shifts.
SubResult round_sub(const LeveledMdp& mdp, const Objective& obj, const MarginalVector& y,
                    const SubOptions& options = {});

}  // namespace submdp

#endif  // SUBMDP_ROUNDING_HPP
