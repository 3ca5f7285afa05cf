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

#include "submdp/rounding.hpp"

#include <algorithm>
#include <sstream>

#include "submdp/evaluation.hpp"
#include "submdp/multilinear.hpp"
#include "submdp/rng.hpp"

namespace submdp {

std::optional<std::string> flow_violation(const LeveledMdp& mdp, const MarginalVector& y, double tol) {
  if (y.size() != mdp.ground_size()) return "flow does not match ground set";
  for (std::size_t e = 0; e < y.size(); ++e) {
    if (!(y[e] >= -tol && y[e] <= 1.0 + tol)) {
      return "entry " + std::to_string(e) + " outside [0, 1]";
    }
  }
  std::vector<double> inflow(mdp.num_states(), 0.0);
  inflow[mdp.initial()] = 1.0;
  for (int h = 1; h <= static_cast<int>(mdp.num_levels()); ++h) {
    for (StateId s : mdp.states_at_level(h)) {
      if (!mdp.acting(s)) continue;
      double out = 0.0;
      for (std::uint32_t k = 0; k < mdp.num_actions(s); ++k) {
        const double f = y[mdp.element(s, k)];
        out += f;
        if (const auto next = mdp.next_state(s, k)) inflow[*next] += f;
      }
      if (std::abs(out - inflow[s]) > tol) {
        std::ostringstream os;
        os << "state " << mdp.state_name(s) << " has inflow " << inflow[s] << " but outflow " << out;
        return os.str();
      }
    }
  }
  return std::nullopt;
}

HighResult round_high(const LeveledMdp& mdp, const Objective& obj, const MixturePolicy& mixture,
                      std::size_t eval_samples, std::uint64_t seed) {
  if (mixture.size() == 0) throw Error("mixture policy must be nonempty");
  HighResult out;
  out.member_values.reserve(mixture.size());
  for (std::size_t i = 0; i < mixture.size(); ++i) {
    const double v = policy_value(mdp, obj, mixture.members()[i], eval_samples,
                                  derive_seed(seed, {i}));
    out.member_values.push_back(v);
    if (i == 0 || v > out.value) {
      out.value = v;
      out.member = i;
    }
  }
  out.policy = mixture.members()[out.member];
  return out;
}

namespace {

// Heaviest positive-flow slot at s (lowest slot on ties), or kNoSlot.
std::uint32_t heaviest_slot(const LeveledMdp& mdp, const MarginalVector& y, StateId s,
                            std::uint32_t skip = kNoSlot) {
  std::uint32_t best = kNoSlot;
  double best_flow = 0.0;
  for (std::uint32_t k = 0; k < mdp.num_actions(s); ++k) {
    if (k == skip) continue;
    const double f = y[mdp.element(s, k)];
    if (f > kFlowZero && (best == kNoSlot || f > best_flow)) {
      best = k;
      best_flow = f;
    }
  }
  return best;
}

struct Branch {
  StateId state;
  std::vector<Element> first;
  std::vector<Element> second;
};

// Walks forward from the initial state through single-action states; at the
// first state with two positive-flow actions, traces both branches in
// lockstep until they meet or the episode ends.
std::optional<Branch> find_branch(const LeveledMdp& mdp, const MarginalVector& y) {
  StateId s = mdp.initial();
  while (mdp.acting(s)) {
    const auto a1 = heaviest_slot(mdp, y, s);
    if (a1 == kNoSlot) return std::nullopt;
    const auto a2 = heaviest_slot(mdp, y, s, a1);
    if (a2 == kNoSlot) {
      const auto next = mdp.next_state(s, a1);
      if (!next) return std::nullopt;
      s = *next;
      continue;
    }
    Branch b{s, {mdp.element(s, std::min(a1, a2))}, {mdp.element(s, std::max(a1, a2))}};
    // Keep the lower slot first so direction order follows action order.
    auto pa = mdp.next_state(s, std::min(a1, a2));
    auto pb = mdp.next_state(s, std::max(a1, a2));
    while (pa && pb && *pa != *pb && mdp.acting(*pa) && mdp.acting(*pb)) {
      const auto ka = heaviest_slot(mdp, y, *pa);
      const auto kb = heaviest_slot(mdp, y, *pb);
      if (ka == kNoSlot || kb == kNoSlot) break;
      b.first.push_back(mdp.element(*pa, ka));
      b.second.push_back(mdp.element(*pb, kb));
      pa = mdp.next_state(*pa, ka);
      pb = mdp.next_state(*pb, kb);
    }
    return b;
  }
  return std::nullopt;
}

MarginalVector shifted(const MarginalVector& y, const std::vector<Element>& donor,
                       const std::vector<Element>& receiver, double amount) {
  MarginalVector out = y;
  for (Element e : donor) {
    out[e] -= amount;
    if (out[e] <= kFlowZero) out[e] = 0.0;
  }
  for (Element e : receiver) out[e] = std::min(1.0, out[e] + amount);
  return out;
}

double min_flow(const MarginalVector& y, const std::vector<Element>& path) {
  double m = 1.0;
  for (Element e : path) m = std::min(m, y[e]);
  return m;
}

}  // namespace

SubResult round_sub(const LeveledMdp& mdp, const Objective& obj, const MarginalVector& y0,
                    const SubOptions& options) {
  if (!mdp.deterministic()) throw Error("SUB requires deterministic transitions");
  if (obj.ground_size() != mdp.ground_size()) throw Error("objective does not match ground set");
  if (auto why = flow_violation(mdp, y0)) throw Error("not a valid flow: " + *why);

  SubResult out;
  out.y = y0;
  auto& y = out.y;
  for (std::size_t e = 0; e < y.size(); ++e) {
    y[e] = y[e] <= kFlowZero ? 0.0 : std::min(y[e], 1.0);
  }

  auto value_of = [&](const MarginalVector& x, std::uint64_t key, bool& exact) {
    if (options.allow_exact) {
      if (auto v = try_exact_multilinear(obj, x)) {
        exact = true;
        return *v;
      }
    }
    exact = false;
    // Common random numbers for both candidates of one shift.
    return estimate_value(obj, x, options.round_samples, derive_seed(options.seed, {key}));
  };

  const std::size_t max_shifts = mdp.ground_size();
  while (auto branch = find_branch(mdp, y)) {
    if (out.shifts >= max_shifts) throw Error("rounding did not terminate");
    const auto key = static_cast<std::uint64_t>(out.shifts);
    const double eps_first = min_flow(y, branch->first);
    const double eps_second = min_flow(y, branch->second);
    const auto cand_a = shifted(y, branch->first, branch->second, eps_first);
    const auto cand_b = shifted(y, branch->second, branch->first, eps_second);
    bool exact_a = false;
    bool exact_b = false;
    const double va = value_of(cand_a, key, exact_a);
    const double vb = value_of(cand_b, key, exact_b);

    SubShift step;
    step.branch = branch->state;
    step.exact = exact_a && exact_b;
    if (options.record_trace && step.exact) {
      bool unused = false;
      step.value_before = value_of(y, key, unused);
    }
    if (vb > va) {
      step.donor = branch->second;
      step.receiver = branch->first;
      step.amount = eps_second;
      step.value_after = vb;
      y = cand_b;
    } else {
      step.donor = branch->first;
      step.receiver = branch->second;
      step.amount = eps_first;
      step.value_after = va;
      y = cand_a;
    }
    ++out.shifts;
    if (options.record_trace) out.trace.push_back(std::move(step));
  }

  // The remaining flow is a single unit path.
  out.policy = DeterministicPolicy::first_action(mdp);
  StateId s = mdp.initial();
  while (mdp.acting(s)) {
    const auto k = heaviest_slot(mdp, y, s);
    if (k == kNoSlot) break;
    out.policy.set_slot(s, k);
    const auto next = mdp.next_state(s, k);
    if (!next) break;
    s = *next;
  }
  return out;
}

}  // namespace submdp
