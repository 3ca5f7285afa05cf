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

#include "submdp/dp_solver.hpp"

#include <algorithm>

namespace submdp {

LinearSolution solve_linear(const LeveledMdp& mdp, std::span<const double> w) {
  if (w.size() != mdp.ground_size()) throw Error("weight vector does not match ground set");
  std::vector<double> value(mdp.num_states(), 0.0);
  LinearSolution sol{DeterministicPolicy(mdp.num_states()), 0.0};
  for (int h = static_cast<int>(mdp.num_levels()); h >= 1; --h) {
    for (StateId s : mdp.states_at_level(h)) {
      if (!mdp.acting(s)) continue;
      double best = 0.0;
      std::uint32_t best_slot = kNoSlot;
      for (std::uint32_t k = 0; k < mdp.num_actions(s); ++k) {
        double q = w[mdp.element(s, k)];
        for (const auto& t : mdp.transition(s, k)) q += t.prob * value[t.state];
        if (best_slot == kNoSlot || q > best) {
          best = q;
          best_slot = k;
        }
      }
      value[s] = best;
      sol.policy.set_slot(s, best_slot);
    }
  }
  sol.value = value[mdp.initial()];
  return sol;
}

double linear_value(const MarginalVector& x, std::span<const double> w) {
  if (x.size() != w.size()) throw Error("weight vector does not match ground set");
  double acc = 0.0;
  for (std::size_t e = 0; e < w.size(); ++e) acc += x[e] * w[e];
  return acc;
}

std::size_t count_paths(const LeveledMdp& mdp, std::size_t cap) {
  if (!mdp.deterministic()) throw Error("path enumeration requires deterministic transitions");
  std::vector<std::size_t> paths(mdp.num_states(), 1);
  for (int h = static_cast<int>(mdp.num_levels()); h >= 1; --h) {
    for (StateId s : mdp.states_at_level(h)) {
      if (!mdp.acting(s)) continue;
      std::size_t total = 0;
      for (std::uint32_t k = 0; k < mdp.num_actions(s); ++k) {
        const auto next = mdp.next_state(s, k);
        total += next ? paths[*next] : 1;
        total = std::min(total, cap);
      }
      paths[s] = total;
    }
  }
  return paths[mdp.initial()];
}

void for_each_path(const LeveledMdp& mdp, const std::function<void(const Trajectory&)>& visit) {
  if (!mdp.deterministic()) throw Error("path enumeration requires deterministic transitions");
  Trajectory cur;
  auto dfs = [&](auto&& self, StateId s) -> void {
    if (!mdp.acting(s)) {
      cur.final_state = s;
      visit(cur);
      return;
    }
    for (std::uint32_t k = 0; k < mdp.num_actions(s); ++k) {
      cur.steps.push_back({s, mdp.actions(s)[k]});
      cur.elements.push_back(mdp.element(s, k));
      if (const auto next = mdp.next_state(s, k)) {
        self(self, *next);
      } else {
        cur.final_state = s;
        visit(cur);
      }
      cur.steps.pop_back();
      cur.elements.pop_back();
    }
  };
  dfs(dfs, mdp.initial());
}

DeterministicPolicy policy_along(const LeveledMdp& mdp, const Trajectory& traj) {
  auto policy = DeterministicPolicy::first_action(mdp);
  for (Element e : traj.elements) policy.set_slot(mdp.state_of(e), mdp.slot_of_element(e));
  return policy;
}

PlanResult brute_force_plan(const LeveledMdp& mdp, const Objective& obj, std::size_t max_paths) {
  if (obj.ground_size() != mdp.ground_size()) throw Error("objective does not match ground set");
  if (count_paths(mdp, max_paths + 1) > max_paths) throw Error("enumeration infeasible");
  PlanResult best;
  bool have = false;
  PairSet s(mdp.ground_size());
  for_each_path(mdp, [&](const Trajectory& t) {
    s.clear();
    for (Element e : t.elements) s.insert(e);
    const double v = obj.evaluate(s);
    if (!have || v > best.value) {
      best.value = v;
      best.trajectory = t;
      have = true;
    }
  });
  best.policy = policy_along(mdp, best.trajectory);
  return best;
}

}  // namespace submdp
