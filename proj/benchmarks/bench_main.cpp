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

#include <numeric>

#include <benchmark/benchmark.h>

#include "submdp/continuous_greedy.hpp"
#include "submdp/dp_solver.hpp"
#include "submdp/environments.hpp"
#include "submdp/multilinear.hpp"
#include "submdp/rounding.hpp"

using namespace submdp;

namespace {

std::vector<Element> all_coords(std::size_t m) {
  std::vector<Element> c(m);
  std::iota(c.begin(), c.end(), Element{0});
  return c;
}

MarginalVector uniform_flow(const LeveledMdp& mdp, std::size_t members, std::uint64_t seed) {
  std::vector<DeterministicPolicy> ps;
  for (std::size_t i = 0; i < members; ++i) {
    CounterRng rng(seed, {i});
    DeterministicPolicy p(mdp.num_states());
    for (StateId s = 0; s < mdp.num_states(); ++s) {
      if (mdp.num_actions(s) > 0) p.set_slot(s, static_cast<std::uint32_t>(rng.below(mdp.num_actions(s))));
    }
    ps.push_back(std::move(p));
  }
  return mixture_marginals(mdp, MixturePolicy(std::move(ps)));
}

}  // namespace

static void BM_LogDetGain(benchmark::State& state) {
  const auto syn = build_synthetic({.n = 10, .seed = 1});
  const PairSet s = sample_set(MarginalVector(syn.objective->ground_size(), 0.1), 2);
  const auto coords = all_coords(syn.objective->ground_size());
  std::vector<double> out(coords.size());
  for (auto _ : state) {
    syn.objective->marginal_gains(s, coords, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(coords.size()));
}
BENCHMARK(BM_LogDetGain);

static void BM_LogDetDense(benchmark::State& state) {
  const auto syn = build_synthetic({.n = 10, .seed = 1});
  const PairSet s = sample_set(MarginalVector(syn.objective->ground_size(), 0.1), 2);
  for (auto _ : state) benchmark::DoNotOptimize(syn.objective->evaluate_dense(s));
}
BENCHMARK(BM_LogDetDense);

static void BM_Gradient(benchmark::State& state) {
  const auto syn = build_synthetic({.n = 10, .seed = 1});
  const MarginalVector x(syn.objective->ground_size(), 0.05);
  const auto coords = all_coords(x.size());
  const bool shared = state.range(0) != 0;
  std::uint64_t it = 0;
  for (auto _ : state) {
    auto g = estimate_gradient(*syn.objective, x, coords, 10, 3, {.shared_batch = shared, .iteration = it++});
    benchmark::DoNotOptimize(g.w.data());
  }
}
BENCHMARK(BM_Gradient)->Arg(1)->Arg(0)->ArgName("shared");

static void BM_SolveLinear(benchmark::State& state) {
  const GridWorld g = build_grid(static_cast<int>(state.range(0)));
  std::vector<double> w(g.mdp.ground_size());
  CounterRng rng(4);
  for (auto& v : w) v = rng.uniform();
  for (auto _ : state) benchmark::DoNotOptimize(solve_linear(g.mdp, w).value);
}
BENCHMARK(BM_SolveLinear)->Arg(10)->Arg(21)->Arg(50);

static void BM_ContinuousGreedySyn10(benchmark::State& state) {
  const auto syn = build_synthetic({.n = 10, .t = 2, .seed = 5});
  for (auto _ : state) {
    const CgResult r = run_continuous_greedy(syn.grid.mdp, syn.objective,
                                             {.delta = 0.01, .samples = 10, .seed = 6, .eval_samples = 100});
    benchmark::DoNotOptimize(r.estimated_F);
  }
}
BENCHMARK(BM_ContinuousGreedySyn10)->Unit(benchmark::kMillisecond);

static void BM_RoundSub(benchmark::State& state) {
  const GridWorld g = build_grid(6);
  const auto cov = random_coverage(g.mdp.ground_size(), 20, 0.08, 7);
  const MarginalVector y = uniform_flow(g.mdp, 8, 8);
  for (auto _ : state) benchmark::DoNotOptimize(round_sub(g.mdp, cov, y).shifts);
}
BENCHMARK(BM_RoundSub)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
