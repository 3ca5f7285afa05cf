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

#include "submdp/baselines.hpp"

#include "submdp/dp_solver.hpp"

namespace submdp {

namespace {

void require_supported(const LeveledMdp& mdp, const Objective& obj, std::size_t l) {
  if (!mdp.deterministic()) throw Error("baselines require deterministic transitions");
  if (obj.ground_size() != mdp.ground_size()) throw Error("objective does not match ground set");
  if (l == 0) throw Error("augmentation level must be >= 1");
}

BaselineResult finish(const LeveledMdp& mdp, const Objective& obj,
                      const std::vector<const MacroAction*>& chosen, double surrogate) {
  BaselineResult out;
  out.surrogate = surrogate;
  out.policy = DeterministicPolicy::first_action(mdp);
  for (const MacroAction* macro : chosen) {
    for (std::size_t i = 0; i < macro->block.size(); ++i) {
      const Element e = macro->block[i];
      out.policy.set_slot(mdp.state_of(e), macro->slots[i]);
    }
  }
  out.trajectory = follow(mdp, out.policy);
  out.value = obj.evaluate(out.trajectory.elements);
  return out;
}

}  // namespace

std::vector<MacroAction> macro_actions(const LeveledMdp& mdp, StateId s, std::size_t l) {
  std::vector<MacroAction> out;
  if (!mdp.acting(s) || l == 0) return out;
  MacroAction cur;
  auto dfs = [&](auto&& self, StateId at, std::size_t depth) -> void {
    if (depth == l || !mdp.acting(at)) {
      cur.end = at;
      out.push_back(cur);
      return;
    }
    for (std::uint32_t k = 0; k < mdp.num_actions(at); ++k) {
      cur.slots.push_back(k);
      cur.block.push_back(mdp.element(at, k));
      if (const auto next = mdp.next_state(at, k)) {
        self(self, *next, depth + 1);
      } else {
        cur.end = std::nullopt;
        out.push_back(cur);
      }
      cur.slots.pop_back();
      cur.block.pop_back();
    }
  };
  dfs(dfs, s, 0);
  return out;
}

BaselineResult dp_baseline(const LeveledMdp& mdp, const Objective& obj, std::size_t l) {
  require_supported(mdp, obj, l);
  const Objective& base = base_objective(obj);
  // per-block rewards only make sense for matrix or additive families
  if (!dynamic_cast<const LogDetObjective*>(&base) && !dynamic_cast<const AdditiveObjective*>(&base)) {
    throw Error("baseline requires matrix or additive rewards");
  }
  struct Memo {
    bool done = false;
    double value = 0.0;
    std::size_t best = 0;
    std::vector<MacroAction> macros;
  };
  std::vector<Memo> memo(mdp.num_states());
  auto solve = [&](auto&& self, StateId s) -> double {
    auto& m = memo[s];
    if (m.done) return m.value;
    m.done = true;
    if (!mdp.acting(s)) return m.value = 0.0;
    auto macros = macro_actions(mdp, s, l);
    double best = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < macros.size(); ++i) {
      double q = base.evaluate(macros[i].block);
      if (macros[i].end) q += self(self, *macros[i].end);
      if (i == 0 || q > best) {
        best = q;
        best_i = i;
      }
    }
    auto& mm = memo[s];
    mm.value = best;
    mm.best = best_i;
    mm.macros = std::move(macros);
    return best;
  };
  const double surrogate = solve(solve, mdp.initial());

  std::vector<const MacroAction*> chosen;
  std::optional<StateId> s = mdp.initial();
  while (s && mdp.acting(*s)) {
    const auto& m = memo[*s];
    const MacroAction* macro = &m.macros[m.best];
    chosen.push_back(macro);
    s = macro->end;
  }
  return finish(mdp, obj, chosen, surrogate);
}

BaselineResult greedy_baseline(const LeveledMdp& mdp, const Objective& obj, std::size_t l) {
  require_supported(mdp, obj, l);
  PairSet visited(mdp.ground_size());
  std::vector<std::vector<MacroAction>> steps;
  std::vector<std::size_t> picks;
  double score = obj.evaluate(visited);
  std::optional<StateId> s = mdp.initial();
  while (s && mdp.acting(*s)) {
    steps.push_back(macro_actions(mdp, *s, l));
    const auto& macros = steps.back();
    double best = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < macros.size(); ++i) {
      PairSet trial = visited;
      for (Element e : macros[i].block) trial.insert(e);
      const double v = obj.evaluate(trial);
      if (i == 0 || v > best) {
        best = v;
        best_i = i;
      }
    }
    for (Element e : macros[best_i].block) visited.insert(e);
    score = best;
    picks.push_back(best_i);
    s = macros[best_i].end;
  }
  std::vector<const MacroAction*> chosen;
  for (std::size_t i = 0; i < steps.size(); ++i) chosen.push_back(&steps[i][picks[i]]);
  return finish(mdp, obj, chosen, score);
}

}  // namespace submdp
