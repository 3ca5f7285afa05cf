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

// Acceptance suite: one PASS/FAIL line per criterion. Arguments select
// criteria by number; no arguments runs all of them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "submdp/baselines.hpp"
#include "submdp/continuous_greedy.hpp"
#include "submdp/evaluation.hpp"
#include "submdp/harness.hpp"
#include "submdp/multilinear.hpp"
#include "submdp/rounding.hpp"
#include "test_util.hpp"

using namespace submdp;

namespace {

const double kE = std::exp(1.0);
const double kCgRatio = 1.0 - 1.0 / kE - 0.05;
// Fixed before any acceptance run; never tuned.
constexpr std::uint64_t kMasterSeed = 1;

struct Verdict {
  bool pass = true;
  std::string detail;
};

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

EnvSpec synthetic_env(const std::string& id, int t) {
  EnvSpec e;
  e.id = id;
  e.kind = EnvKind::kSynthetic;
  e.n = 10;
  e.t = t;
  return e;
}

AlgoSpec dp(const std::string& id, std::size_t l, AlgoKind kind = AlgoKind::kDp) {
  AlgoSpec a;
  a.id = id;
  a.kind = kind;
  a.l = l;
  return a;
}

AlgoSpec cg_high() {
  AlgoSpec a;
  a.id = "cg_high";
  a.kind = AlgoKind::kCg;
  a.delta = 0.01;
  a.samples = 10;
  a.rounding = Rounding::kHigh;
  return a;
}

const SummaryRow& find(const ExperimentResults& r, const std::string& env, const std::string& algo) {
  for (const auto& s : r.summary) {
    if (s.env == env && s.algorithm == algo) return s;
  }
  throw Error("missing summary row " + env + "/" + algo);
}

std::size_t error_rows(const ExperimentResults& r) {
  std::size_t n = 0;
  for (const auto& row : r.rows) n += row.error.has_value();
  return n;
}

// 1: DP in Aug_1 on the 10x10 synthetic grids.
Verdict synthetic_dp() {
  ExperimentConfig cfg;
  cfg.envs = {synthetic_env("syn10_2", 2), synthetic_env("syn10_5", 5)};
  cfg.algos = {dp("dp1", 1)};
  cfg.repetitions = 100;
  cfg.seed = kMasterSeed;
  cfg.parallelism = threads();
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentResults r = run_experiment(cfg);
  const double secs = seconds_since(t0);
  const auto& a = find(r, "syn10_2", "dp1");
  const auto& b = find(r, "syn10_5", "dp1");
  Verdict v;
  v.pass = std::abs(a.mean + 34.7) <= 1.0 && a.std <= 1.0 && std::abs(b.mean + 34.8) <= 1.0 && secs < 60.0 &&
           error_rows(r) == 0;
  v.detail = fmt("t=2 mean %.3f std %.3f (want -34.7+-1.0, std<=1.0); t=5 mean %.3f std %.3f (want -34.8+-1.0); %.1fs",
                 a.mean, a.std, b.mean, b.std, secs);
  return v;
}

// 2: CG+HIGH > DP Aug3 > DP Aug1, and CG+HIGH near the published means.
Verdict synthetic_ordering() {
  ExperimentConfig cfg;
  cfg.envs = {synthetic_env("syn10_2", 2), synthetic_env("syn10_5", 5)};
  cfg.algos = {dp("dp1", 1), dp("dp3", 3), cg_high()};
  cfg.repetitions = 100;
  cfg.seed = kMasterSeed;
  cfg.parallelism = threads();
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentResults r = run_experiment(cfg);
  Verdict v;
  v.pass = error_rows(r) == 0;
  const double target[2] = {8.2, 20.7};
  int i = 0;
  for (const char* env : {"syn10_2", "syn10_5"}) {
    const double d1 = find(r, env, "dp1").mean, d3 = find(r, env, "dp3").mean, cg = find(r, env, "cg_high").mean;
    v.pass = v.pass && cg > d3 && d3 > d1 && std::abs(cg - target[i]) <= 3.0;
    v.detail += fmt("%s: cg_high %.2f (want %.1f+-3.0) > dp3 %.2f > dp1 %.2f; ", env, cg, target[i], d3, d1);
    ++i;
  }
  v.detail += fmt("%.0fs", seconds_since(t0));
  return v;
}

// 3: additive objectives with exact gradients recover the linear optimum.
Verdict additive_exactness() {
  Verdict v;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    CounterRng rng(seed, {3});
    GridWorld g;
    if (seed % 2 == 0) {
      g = build_grid(n);
    } else {
      // random obstacles give irregular deterministic grids
      std::vector<std::uint8_t> nav(static_cast<std::size_t>(n * n), 1);
      for (auto& c : nav) c = rng.uniform() < 0.8;
      nav.front() = nav.back() = 1;
      try {
        g = build_masked_grid(n, n, {1, 1}, {n, n}, nav);
      } catch (const Error&) {
        g = build_grid(n);
      }
    }
    const auto obj = std::make_shared<AdditiveObjective>(random_additive(g.mdp.ground_size(), 5.0, seed));
    const CgResult cg = run_continuous_greedy(
        g.mdp, obj, {.delta = 0.01, .seed = seed, .gradient_mode = GradientMode::kExactWhenAvailable});
    const double best = solve_linear(g.mdp, obj->weights()).value;
    worst = std::max(worst, std::abs(mixture_value(g.mdp, *obj, cg.mixture) - best));
  }
  v.pass = worst <= 1e-9;
  v.detail = fmt("50 grids, max |mixture value - linear optimum| = %.3g (want <= 1e-9)", worst);
  return v;
}

// 4: cardinality instances with SUB rounding.
Verdict cardinality() {
  Verdict v;
  double worst = INFINITY;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 8 + seed % 3;
    const LeveledMdp mdp = build_cardinality_mdp(n, 3);
    const CoverageObjective items = random_coverage(n, 2 * n, 0.2, derive_seed(kMasterSeed, {4, seed}));
    const auto obj = lift_item_coverage(mdp, items);
    const CgResult cg = run_continuous_greedy(mdp, obj, {.delta = 0.01, .samples = 200, .seed = seed});
    const SubResult sub = round_sub(mdp, *obj, cg.y_final, {.seed = seed});
    const double value = obj->evaluate(follow(mdp, sub.policy).elements);
    const double opt = best_k_subset(items, 3);
    worst = std::min(worst, value / opt);
  }
  v.pass = worst >= kCgRatio;
  v.detail = fmt("20 seeds, min rounded/OPT = %.4f (want >= %.4f)", worst, kCgRatio);
  return v;
}

// 5: (1/H) F(x(pi)) <= f(pi) <= e/(e-1) F(x(pi)) for mixtures.
Verdict sandwich() {
  Verdict v;
  int checked = 0, bad = 0;
  double lo_slack = INFINITY, hi_slack = INFINITY;
  for (std::uint64_t seed = 0; checked < 50; ++seed) {
    const LeveledMdp mdp = random_leveled_mdp({.levels = 4 + int(seed % 3), .max_width = 3, .max_actions = 2, .deterministic = true, .seed = seed});
    if (mdp.ground_size() > 14) continue;
    ++checked;
    std::unique_ptr<Objective> obj;
    if (seed % 3 == 0) {
      obj = std::make_unique<AdditiveObjective>(random_additive(mdp.ground_size(), 2.0, seed));
    } else {
      obj = std::make_unique<CoverageObjective>(random_coverage(mdp.ground_size(), 10, 0.25, seed));
    }
    CounterRng rng(seed, {5});
    MixturePolicy mix;
    const std::size_t k = 1 + rng.below(6);
    for (std::size_t i = 0; i < k; ++i) mix.add(submdp::test::random_policy(mdp, derive_seed(seed, {5, i})));
    const double f = mixture_value(mdp, *obj, mix);
    const double F = submdp::test::enumerate_F(*obj, mixture_marginals(mdp, mix));
    const double H = static_cast<double>(mdp.acting_levels());
    lo_slack = std::min(lo_slack, f - F / H);
    hi_slack = std::min(hi_slack, kE / (kE - 1.0) * F - f);
    bad += !(F / H <= f + 1e-9 && f <= kE / (kE - 1.0) * F + 1e-9);
  }
  v.pass = bad == 0;
  v.detail = fmt("%d MDPs, %d violations; min slack lower %.3g upper %.3g", checked, bad, lo_slack, hi_slack);
  return v;
}

// 6: exact F(y_T) against the best path on tiny grids.
Verdict discrete_surrogate() {
  Verdict v;
  double worst = INFINITY;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 3 + static_cast<int>(seed % 2);
    const GridWorld g = build_grid(n);
    const auto obj = std::make_shared<CoverageObjective>(
        random_coverage(g.mdp.ground_size(), 3 * n, 0.15, derive_seed(kMasterSeed, {6, seed})));
    const CgResult cg = run_continuous_greedy(
        g.mdp, obj, {.delta = 0.01, .seed = seed, .gradient_mode = GradientMode::kExactWhenAvailable});
    const double F = *try_exact_multilinear(*obj, cg.y_final);
    const double best = brute_force_plan(g.mdp, *obj).value;
    worst = std::min(worst, F / best);
  }
  v.pass = worst >= kCgRatio;
  v.detail = fmt("20 grids, min F(y_T)/best path = %.4f (want >= %.4f)", worst, kCgRatio);
  return v;
}

// 7: Monte Carlo estimates are centred on the exact values.
Verdict calibration() {
  Verdict v;
  int bad = 0, total = 0;
  double worst_z = 0.0;
  auto check = [&](const std::vector<double>& xs, double exact) {
    double mean = 0.0, ss = 0.0;
    for (double x : xs) mean += x / double(xs.size());
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double se = std::sqrt(ss / double(xs.size() - 1)) / std::sqrt(double(xs.size()));
    const double dev = std::abs(mean - exact);
    if (dev > 1e-12) worst_z = std::max(worst_z, dev / se);
    bad += dev > 4.0 * se + 1e-12;
    ++total;
  };
  for (std::uint64_t inst = 0; inst < 5; ++inst) {
    const std::size_t m = 10 + inst % 3;
    const CoverageObjective cov = random_coverage(m, 10, 0.25, derive_seed(kMasterSeed, {7, inst}));
    const MarginalVector x = submdp::test::random_point(m, derive_seed(kMasterSeed, {7, inst, 1}));
    std::vector<double> vals;
    for (std::uint64_t k = 0; k < 200; ++k) vals.push_back(estimate_value(cov, x, 500, derive_seed(inst, {k})));
    check(vals, submdp::test::enumerate_F(cov, x));

    CounterRng rng(inst, {7});
    std::vector<Element> coords;
    while (coords.size() < 10) {
      const auto e = static_cast<Element>(rng.below(m));
      if (std::find(coords.begin(), coords.end(), e) == coords.end()) coords.push_back(e);
    }
    std::vector<std::vector<double>> grads(coords.size());
    for (std::uint64_t k = 0; k < 200; ++k) {
      const auto g = estimate_gradient(cov, x, coords, 500, derive_seed(inst, {k, 2}));
      for (std::size_t j = 0; j < coords.size(); ++j) grads[j].push_back(g.w[j]);
    }
    for (std::size_t j = 0; j < coords.size(); ++j) {
      MarginalVector hi = x, lo = x;
      hi[coords[j]] = 1.0;
      lo[coords[j]] = 0.0;
      check(grads[j], submdp::test::enumerate_F(cov, hi) - submdp::test::enumerate_F(cov, lo));
    }
  }
  v.pass = bad == 0;
  v.detail = fmt("%d estimates checked, %d outside 4 SE; worst |z| = %.2f", total, bad, worst_z);
  return v;
}

// 8: SUB on random flows over 6x6 grids with exact F.
Verdict sub_soundness() {
  Verdict v;
  const GridWorld g = build_grid(6);
  const std::size_t m = g.mdp.ground_size();
  int structural = 0, drops = 0, shifts_total = 0, single_pair_drops = 0;
  double worst_drop = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CounterRng rng(kMasterSeed, {8, seed});
    MixturePolicy mix;
    const std::size_t k = 2 + rng.below(7);
    for (std::size_t i = 0; i < k; ++i) mix.add(submdp::test::random_policy(g.mdp, derive_seed(kMasterSeed, {8, seed, i})));
    const MarginalVector y = mixture_marginals(g.mdp, mix);
    const CoverageObjective cov = random_coverage(m, 20, 0.08, derive_seed(kMasterSeed, {8, seed, 99}));
    const SubResult r = round_sub(g.mdp, cov, y, {.seed = seed, .record_trace = true});
    bool ok = r.shifts <= m && !flow_violation(g.mdp, r.y).has_value();
    for (double val : r.y.values()) ok = ok && (std::abs(val) < 1e-9 || std::abs(val - 1.0) < 1e-9);
    const auto x = policy_marginals(g.mdp, r.policy);
    for (Element e = 0; e < m; ++e) ok = ok && std::abs(x[e] - r.y[e]) < 1e-9;
    structural += !ok;
    double prev = *try_exact_multilinear(cov, y);
    for (const SubShift& s : r.trace) {
      ++shifts_total;
      if (!s.exact) {
        ++drops;
        continue;
      }
      if (s.value_after < prev - 1e-9) {
        ++drops;
        // along e_i - e_j F is convex, so a one-pair shift can never lose
        single_pair_drops += s.donor.size() == 1 && s.receiver.size() == 1;
        worst_drop = std::max(worst_drop, prev - s.value_after);
      }
      prev = s.value_after;
    }
  }
  v.pass = structural == 0 && drops == 0;
  v.detail = fmt("100 flows, %d structural failures; %d of %d shifts lowered exact F (worst drop %.4g, %d of them "
                 "one-pair shifts)",
                 structural, drops, shifts_total, worst_drop, single_pair_drops);
  return v;
}

// 9: navigation ordering on the shipped stand-in maps.
Verdict navigation() {
  ExperimentConfig cfg;
  for (int i = 1; i <= 3; ++i) {
    EnvSpec e;
    e.id = "proc" + std::to_string(i);
    e.kind = EnvKind::kNav;
    e.map_path = std::string(SUBMDP_DATA_DIR) + "/maps/proc" + std::to_string(i) + ".map";
    std::ifstream in(e.map_path);
    e.map = read_nav_map(in);
    e.random_targets = true;
    e.d = 10;
    cfg.envs.push_back(e);
  }
  cfg.algos = {dp("dp3", 3), dp("greedy3", 3, AlgoKind::kGreedy), cg_high()};
  cfg.repetitions = 100;
  cfg.seed = kMasterSeed;
  cfg.parallelism = threads();
  const auto t0 = std::chrono::steady_clock::now();
  const ExperimentResults r = run_experiment(cfg);
  Verdict v;
  v.pass = error_rows(r) == 0;
  for (const auto& env : cfg.envs) {
    const double cg = find(r, env.id, "cg_high").mean, d3 = find(r, env.id, "dp3").mean,
                 g3 = find(r, env.id, "greedy3").mean;
    v.pass = v.pass && cg >= d3 && d3 >= g3;
    v.detail += fmt("%s: cg_high %.2f >= dp3 %.2f >= greedy3 %.2f; ", env.id.c_str(), cg, d3, g3);
  }
  v.detail += fmt("%.0fs", seconds_since(t0));
  return v;
}

// 10: byte-identical CSV across runs and parallelism degrees.
Verdict determinism() {
  ExperimentConfig cfg = load_experiment_config(std::string(SUBMDP_DATA_DIR) + "/configs/smoke.ini");
  std::string first;
  bool same = true;
  for (unsigned p : {1u, 4u, 1u, 3u}) {
    cfg.parallelism = p;
    std::ostringstream csv;
    const ExperimentResults r = run_experiment(cfg);
    write_results_csv(csv, r);
    write_summary_csv(csv, r);
    if (first.empty()) {
      first = csv.str();
    } else {
      same = same && csv.str() == first;
    }
  }
  return {same, fmt("smoke config, parallelism 1/4/1/3: %s", same ? "byte-identical" : "outputs differ")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "synthetic DP Aug1 mean/std", synthetic_dp},
      {2, "synthetic algorithm ordering", synthetic_ordering},
      {3, "additive objectives are solved exactly", additive_exactness},
      {4, "cardinality SUB approximation", cardinality},
      {5, "mixture value sandwich", sandwich},
      {6, "continuous greedy surrogate bound", discrete_surrogate},
      {7, "estimator calibration", calibration},
      {8, "SUB rounding soundness", sub_soundness},
      {9, "navigation ordering", navigation},
      {10, "determinism", determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.contains(c.id)) continue;
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %2d %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
