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

#ifndef SUBMDP_CONTINUOUS_GREEDY_HPP
#define SUBMDP_CONTINUOUS_GREEDY_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "submdp/mdp.hpp"
#include "submdp/objective.hpp"

namespace submdp {

enum class GradientMode { kMonteCarlo, kExactWhenAvailable };
enum class OffsetMode { kRaw, kNonnegativeShift };

struct CgConfig {
  /// Step size; 1/delta must be an integer.
  double delta = 0.01;
  /// Samples per gradient estimate (R).
  std::size_t samples = 10;
  /// Replace `samples` with 10 (1 + ln(|S||A|)) / delta^2.
  bool theoretical_samples = false;
  std::uint64_t seed = 0;
  GradientMode gradient_mode = GradientMode::kMonteCarlo;
  /// kNonnegativeShift reports values of f - f(empty set).
  OffsetMode offset_mode = OffsetMode::kRaw;
  bool shared_batch = true;
  /// Fresh samples for the final F estimate.
  std::size_t eval_samples = 1000;
  /// Samples for the per-iteration F estimate in the trace; 0 skips it.
  std::size_t trace_samples = 0;
  unsigned threads = 1;
};

struct CgIteration {
  std::size_t t = 0;
  /// x(pi_t) . w_t, the DP optimum of the step.
  double linear_value = 0.0;
  double w_min = 0.0;
  double w_max = 0.0;
  std::optional<double> estimated_F;
};

struct CgResult {
  MixturePolicy mixture;
  MarginalVector y_final;
  std::vector<CgIteration> iterations;
  double estimated_F = 0.0;
  std::size_t samples_per_estimate = 0;
};

/// T = 1/delta, validated to be a positive integer.
std::size_t iteration_count(double delta);

/// 10 (1 + ln(|S| |A|)) / delta^2, rounded up.
std::size_t theoretical_sample_count(const LeveledMdp& mdp, double delta);

/// Discretized continuous greedy: T rounds of gradient estimation at y_{t-1},
/// a linear DP step, and y_t = y_{t-1} + delta x(pi_t). Returns the uniform
/// mixture over the T step policies together with y_T.
CgResult run_continuous_greedy(const LeveledMdp& mdp, const ObjectivePtr& obj, const CgConfig& cfg);

/// Independent restarts (restart 0 uses cfg.seed); keeps the run with the
/// largest estimated_F, earliest on ties.
CgResult run_continuous_greedy(const LeveledMdp& mdp, const ObjectivePtr& obj, const CgConfig& cfg,
                               std::size_t restarts);

/// CSV with header `t,linear_value,estimated_F`; estimated_F is empty when
/// not traced.
void write_trace_csv(std::ostream& out, const CgResult& result);

}  // namespace submdp

#endif  // SUBMDP_CONTINUOUS_GREEDY_HPP
