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

#include "submdp/continuous_greedy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "submdp/dp_solver.hpp"
#include "submdp/multilinear.hpp"
#include "submdp/rng.hpp"

namespace submdp {

namespace {

enum StreamKey : std::uint64_t { kGradientStream = 1, kFinalStream = 2, kTraceStream = 3 };

}  // namespace

std::size_t iteration_count(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw Error("delta must lie in (0, 1]");
  const double t = 1.0 / delta;
  const double rounded = std::round(t);
  if (std::abs(t - rounded) > 1e-9 * rounded) throw Error("1/delta must be an integer");
  return static_cast<std::size_t>(rounded);
}

std::size_t theoretical_sample_count(const LeveledMdp& mdp, double delta) {
  const double sa = static_cast<double>(mdp.num_states()) *
                    static_cast<double>(std::max<std::size_t>(mdp.num_action_ids(), 1));
  return static_cast<std::size_t>(std::ceil(10.0 * (1.0 + std::log(sa)) / (delta * delta)));
}

CgResult run_continuous_greedy(const LeveledMdp& mdp, const ObjectivePtr& obj, const CgConfig& cfg) {
  if (!obj) throw Error("objective is null");
  if (obj->ground_size() != mdp.ground_size()) throw Error("objective does not match ground set");
  const std::size_t T = iteration_count(cfg.delta);
  const std::size_t R = cfg.theoretical_samples ? theoretical_sample_count(mdp, cfg.delta) : cfg.samples;
  if (R == 0) throw Error("samples must be >= 1");

  const ObjectivePtr reported =
      cfg.offset_mode == OffsetMode::kNonnegativeShift ? normalized(obj) : obj;
  const std::size_t m = mdp.ground_size();
  std::vector<Element> coords(m);
  std::iota(coords.begin(), coords.end(), Element{0});

  GradientOptions gopts;
  gopts.shared_batch = cfg.shared_batch;
  gopts.prefer_exact = cfg.gradient_mode == GradientMode::kExactWhenAvailable;
  gopts.threads = cfg.threads;
  const std::uint64_t gradient_seed = derive_seed(cfg.seed, {kGradientStream});

  CgResult result;
  result.samples_per_estimate = R;
  result.y_final = MarginalVector(m);
  result.iterations.reserve(T);
  std::vector<DeterministicPolicy> members;
  members.reserve(T);
  auto& y = result.y_final;

  for (std::size_t t = 1; t <= T; ++t) {
    gopts.iteration = t;
    const auto grad = estimate_gradient(*obj, y, coords, R, gradient_seed, gopts);
    auto step = solve_linear(mdp, grad.w);
    const auto x = policy_marginals(mdp, step.policy);
    for (std::size_t e = 0; e < m; ++e) y[e] += cfg.delta * x[e];

    CgIteration it;
    it.t = t;
    it.linear_value = step.value;
    const auto [lo, hi] = std::minmax_element(grad.w.begin(), grad.w.end());
    it.w_min = *lo;
    it.w_max = *hi;
    if (cfg.trace_samples > 0) {
      it.estimated_F = estimate_value(*reported, y, cfg.trace_samples,
                                      derive_seed(cfg.seed, {kTraceStream, t}), cfg.threads);
    }
    result.iterations.push_back(it);
    members.push_back(std::move(step.policy));
  }
  // Accumulated rounding can push entries a hair past 1.
  for (std::size_t e = 0; e < m; ++e) y[e] = std::clamp(y[e], 0.0, 1.0);
  result.mixture = MixturePolicy(std::move(members));
  if (cfg.eval_samples > 0) {
    result.estimated_F = estimate_value(*reported, y, cfg.eval_samples,
                                        derive_seed(cfg.seed, {kFinalStream}), cfg.threads);
  }
  return result;
}

CgResult run_continuous_greedy(const LeveledMdp& mdp, const ObjectivePtr& obj, const CgConfig& cfg,
                               std::size_t restarts) {
  if (restarts == 0) throw Error("restarts must be >= 1");
  CgResult best = run_continuous_greedy(mdp, obj, cfg);
  for (std::size_t k = 1; k < restarts; ++k) {
    CgConfig c = cfg;
    c.seed = derive_seed(cfg.seed, {0x7265737461727473ULL, k});
    auto r = run_continuous_greedy(mdp, obj, c);
    if (r.estimated_F > best.estimated_F) best = std::move(r);
  }
  return best;
}

void write_trace_csv(std::ostream& out, const CgResult& result) {
  out << "t,linear_value,estimated_F\n";
  char buf[64];
  for (const auto& it : result.iterations) {
    std::snprintf(buf, sizeof buf, "%.6g", it.linear_value);
    out << it.t << ',' << buf << ',';
    if (it.estimated_F) {
      std::snprintf(buf, sizeof buf, "%.6g", *it.estimated_F);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace submdp
