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

// Small builders shared by the unit and acceptance tests.

#ifndef SUBMDP_TEST_UTIL_HPP
#define SUBMDP_TEST_UTIL_HPP

#include <cmath>
#include <string_view>
#include <vector>

#include "submdp/dp_solver.hpp"
#include "submdp/environments.hpp"
#include "submdp/mdp.hpp"
#include "submdp/objective.hpp"
#include "submdp/rng.hpp"

namespace submdp::test {

// Deterministic policy that walks `moves` (R/D) from (1,1); other cells get
// their first legal action.
inline DeterministicPolicy path_policy(const GridWorld& g, std::string_view moves) {
  DeterministicPolicy p = DeterministicPolicy::first_action(g.mdp);
  Cell c{1, 1};
  for (char m : moves) {
    const StateId s = *g.state_at(c);
    const ActionId a = m == 'R' ? kRight : kDown;
    p.set_slot(s, g.mdp.slot_of(s, a));
    if (a == kRight) {
      ++c.col;
    } else {
      ++c.row;
    }
  }
  return p;
}

inline Element pair_at(const GridWorld& g, Cell c, ActionId a) {
  return g.mdp.element_for(*g.state_at(c), a);
}

// A chain of `levels` states with one action each; the last one is terminal.
inline LeveledMdp single_path(int levels) {
  MdpBuilder b;
  const ActionId a = b.add_action_name("go");
  std::vector<StateId> s;
  for (int h = 1; h <= levels; ++h) s.push_back(b.add_state("s" + std::to_string(h), h, h < levels));
  for (int h = 0; h + 1 < levels; ++h) b.add_transition(s[h], a, {{s[h + 1], 1.0}});
  return std::move(b).build();
}

inline std::vector<double> random_weights(std::size_t m, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
  CounterRng rng(seed);
  std::vector<double> w(m);
  for (auto& v : w) v = lo + (hi - lo) * rng.uniform();
  return w;
}

inline MarginalVector random_point(std::size_t m, std::uint64_t seed) {
  CounterRng rng(seed);
  MarginalVector x(m);
  for (std::size_t e = 0; e < m; ++e) x[e] = rng.uniform();
  return x;
}

// Uniformly random deterministic policy.
inline DeterministicPolicy random_policy(const LeveledMdp& mdp, std::uint64_t seed) {
  CounterRng rng(seed);
  DeterministicPolicy p(mdp.num_states());
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    if (mdp.num_actions(s) > 0) p.set_slot(s, static_cast<std::uint32_t>(rng.below(mdp.num_actions(s))));
  }
  return p;
}

// Plain 2^m sum over subsets, weighting each by its Bernoulli probability.
// Independent of the library's Gray-code walk.
inline double enumerate_F(const Objective& obj, const MarginalVector& x) {
  const std::size_t m = obj.ground_size();
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    double p = 1.0;
    PairSet s(m);
    for (std::size_t e = 0; e < m; ++e) {
      if (mask >> e & 1) {
        p *= x[e];
        s.insert(static_cast<Element>(e));
      } else {
        p *= 1.0 - x[e];
      }
    }
    if (p != 0.0) total += p * obj.evaluate(s);
  }
  return total;
}

}  // namespace submdp::test

#endif  // SUBMDP_TEST_UTIL_HPP
