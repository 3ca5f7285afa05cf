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

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>

#include "submdp/baselines.hpp"
#include "submdp/continuous_greedy.hpp"
#include "submdp/dp_solver.hpp"
#include "submdp/evaluation.hpp"
#include "submdp/harness.hpp"
#include "submdp/parallel.hpp"
#include "submdp/rng.hpp"
#include "submdp/rounding.hpp"

namespace submdp {

std::uint64_t repetition_seed(std::uint64_t master, std::size_t repetition) {
  return derive_seed(master, {static_cast<std::uint64_t>(repetition)});
}

Instance build_instance(const EnvSpec& env, std::uint64_t seed) {
  Instance inst;
  switch (env.kind) {
    case EnvKind::kSynthetic: {
      auto syn = build_synthetic({.n = env.n, .d = env.d, .t = env.t, .lambda = env.lambda, .seed = seed});
      inst.grid = std::move(syn.grid);
      inst.objective = std::move(syn.objective);
      inst.has_layout = true;
      break;
    }
    case EnvKind::kNav: {
      if (!env.map) throw Error("nav environment '" + env.id + "' has no map");
      NavMap map = *env.map;
      if (env.random_targets) map.targets = random_targets(map, static_cast<std::size_t>(env.d), seed);
      auto nav = build_nav(map, env.lambda);
      inst.grid = std::move(nav.grid);
      inst.objective = std::move(nav.objective);
      inst.map = std::move(map);
      inst.has_layout = true;
      break;
    }
    case EnvKind::kCardinality: {
      std::shared_ptr<const CoverageObjective> items;
      if (!env.objective_path.empty()) {
        std::ifstream in(env.objective_path);
        if (!in) throw Error("cannot read objective " + env.objective_path.string());
        items = std::dynamic_pointer_cast<const CoverageObjective>(read_objective(in, env.items));
        if (!items) throw Error("cardinality environments need a coverage objective");
      } else {
        items = std::make_shared<const CoverageObjective>(
            random_coverage(env.items, env.universe, env.density, seed));
      }
      inst.grid.mdp = build_cardinality_mdp(env.items, env.k);
      inst.objective = lift_item_coverage(inst.grid.mdp, *items);
      inst.items = std::move(items);
      break;
    }
  }
  if (env.normalize) inst.objective = normalized(inst.objective);
  return inst;
}

AlgoOutcome run_algorithm(const Instance& inst, const AlgoSpec& algo, std::uint64_t seed) {
  const LeveledMdp& mdp = inst.grid.mdp;
  const Objective& obj = *inst.objective;
  AlgoOutcome out;
  switch (algo.kind) {
    case AlgoKind::kCg: {
      CgConfig cfg;
      cfg.delta = algo.delta;
      cfg.samples = algo.samples;
      cfg.seed = derive_seed(seed, {0});
      cfg.gradient_mode = algo.exact_gradient ? GradientMode::kExactWhenAvailable : GradientMode::kMonteCarlo;
      cfg.eval_samples = algo.eval_samples;
      const CgResult cg = run_continuous_greedy(mdp, inst.objective, cfg, algo.restarts);
      const std::uint64_t eval_seed = derive_seed(seed, {1});
      if (algo.rounding == Rounding::kNone) {
        out.value = mixture_value(mdp, obj, cg.mixture, algo.eval_samples, eval_seed);
      } else if (algo.rounding == Rounding::kHigh) {
        const HighResult high = round_high(mdp, obj, cg.mixture, algo.eval_samples, eval_seed);
        out.value = high.value;
        if (mdp.deterministic()) out.trajectory = follow(mdp, high.policy);
      } else {
        SubOptions opt;
        opt.round_samples = algo.round_samples;
        opt.seed = derive_seed(seed, {2});
        const SubResult sub = round_sub(mdp, obj, cg.y_final, opt);
        out.value = policy_value(mdp, obj, sub.policy, algo.eval_samples, eval_seed);
        out.trajectory = follow(mdp, sub.policy);
      }
      break;
    }
    case AlgoKind::kDp:
    case AlgoKind::kGreedy: {
      const BaselineResult r =
          algo.kind == AlgoKind::kDp ? dp_baseline(mdp, obj, algo.l) : greedy_baseline(mdp, obj, algo.l);
      out.value = r.value;
      out.trajectory = r.trajectory;
      break;
    }
    case AlgoKind::kOptimal: {
      const PlanResult r = brute_force_plan(mdp, obj);
      out.value = r.value;
      out.trajectory = r.trajectory;
      break;
    }
  }
  if (!std::isfinite(out.value)) throw Error("non-finite objective value");
  return out;
}

ExperimentResults run_experiment(const ExperimentConfig& cfg) {
  if (cfg.repetitions == 0) throw Error("repetitions must be >= 1");
  const std::size_t ne = cfg.envs.size(), na = cfg.algos.size(), reps = cfg.repetitions;
  // cell (env, algo, rep) at ((env * na) + algo) * reps + rep
  std::vector<ResultRow> rows(ne * na * reps);
  parallel_for(reps, std::max(1u, cfg.parallelism), [&](std::size_t rep) {
    const std::uint64_t rs = repetition_seed(cfg.seed, rep);
    for (std::size_t e = 0; e < ne; ++e) {
      const EnvSpec& env = cfg.envs[e];
      std::optional<Instance> inst;
      std::optional<std::string> build_error;
      try {
        inst = build_instance(env, derive_seed(rs, {e, 0}));
      } catch (const std::exception& ex) {
        build_error = ex.what();
      }
      const std::uint64_t algo_seed = derive_seed(rs, {e, 1});
      for (std::size_t a = 0; a < na; ++a) {
        ResultRow& row = rows[(e * na + a) * reps + rep];
        row.env = env.id;
        row.algorithm = cfg.algos[a].id;
        row.repetition = rep;
        row.seed = rs;
        row.value = std::numeric_limits<double>::quiet_NaN();
        if (build_error) {
          row.error = *build_error;
          continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        try {
          row.value = run_algorithm(*inst, cfg.algos[a], algo_seed).value;
        } catch (const std::exception& ex) {
          row.value = std::numeric_limits<double>::quiet_NaN();
          row.error = ex.what();
        }
        if (cfg.timing) {
          row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
      }
    }
  });
  ExperimentResults res;
  res.rows = std::move(rows);
  res.summary = summarize(res.rows);
  return res;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  std::vector<SummaryRow> out;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::vector<std::vector<double>> values;
  for (const ResultRow& r : rows) {
    auto [it, fresh] = index.try_emplace({r.env, r.algorithm}, out.size());
    if (fresh) {
      out.push_back({.env = r.env, .algorithm = r.algorithm});
      values.emplace_back();
    }
    if (!r.error && std::isfinite(r.value)) values[it->second].push_back(r.value);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& v = values[i];
    out[i].n = v.size();
    if (v.empty()) {
      out[i].mean = out[i].std = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    out[i].mean = mean;
    out[i].std = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  }
  return out;
}

}  // namespace submdp
