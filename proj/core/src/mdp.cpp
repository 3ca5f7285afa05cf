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

#include "submdp/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "submdp/rng.hpp"

namespace submdp {

namespace {

constexpr double kNormalizationTol = 1e-12;

}  // namespace

std::optional<StateId> LeveledMdp::find_state(std::string_view name) const {
  for (StateId s = 0; s < states_.size(); ++s) {
    if (states_[s].name == name) return s;
  }
  return std::nullopt;
}

std::optional<ActionId> LeveledMdp::find_action(std::string_view name) const {
  for (ActionId a = 0; a < action_names_.size(); ++a) {
    if (action_names_[a] == name) return a;
  }
  return std::nullopt;
}

std::span<const StateId> LeveledMdp::states_at_level(int h) const {
  if (h < 1 || static_cast<std::size_t>(h) > levels_.size()) return {};
  return levels_[static_cast<std::size_t>(h - 1)];
}

std::span<const ActionId> LeveledMdp::actions(StateId s) const {
  return states_.at(s).actions;
}

std::uint32_t LeveledMdp::slot_of(StateId s, ActionId a) const {
  const auto& acts = states_.at(s).actions;
  auto it = std::lower_bound(acts.begin(), acts.end(), a);
  if (it == acts.end() || *it != a) return kNoSlot;
  return static_cast<std::uint32_t>(it - acts.begin());
}

std::span<const Successor> LeveledMdp::transition(StateId s, std::uint32_t slot) const {
  return states_.at(s).successors.at(slot);
}

std::optional<StateId> LeveledMdp::next_state(StateId s, std::uint32_t slot) const {
  const auto succ = transition(s, slot);
  if (succ.empty()) return std::nullopt;
  return succ.front().state;
}

Element LeveledMdp::element(StateId s, std::uint32_t slot) const {
  const auto& rec = states_.at(s);
  if (slot >= rec.actions.size()) throw Error("illegal action slot");
  return rec.first_element + slot;
}

Element LeveledMdp::element_for(StateId s, ActionId a) const {
  const auto slot = slot_of(s, a);
  if (slot == kNoSlot) throw Error("action not legal at state " + state_name(s));
  return element(s, slot);
}

ActionId MdpBuilder::add_action_name(std::string name) {
  if (mdp_.find_action(name)) throw Error("duplicate action name '" + name + "'");
  mdp_.action_names_.push_back(std::move(name));
  return static_cast<ActionId>(mdp_.action_names_.size() - 1);
}

StateId MdpBuilder::add_state(std::string name, int level, bool acting) {
  if (level < 1) throw Error("state level must be >= 1");
  LeveledMdp::StateRecord rec;
  rec.name = std::move(name);
  rec.level = level;
  rec.acting = acting;
  mdp_.states_.push_back(std::move(rec));
  return static_cast<StateId>(mdp_.states_.size() - 1);
}

void MdpBuilder::add_transition(StateId s, ActionId a, std::vector<Successor> successors) {
  if (s >= mdp_.states_.size()) throw Error("unknown state id");
  if (a >= mdp_.action_names_.size()) throw Error("unknown action id");
  auto& rec = mdp_.states_[s];
  if (!rec.acting) throw Error("transition declared on non-acting state " + rec.name);
  auto it = std::lower_bound(rec.actions.begin(), rec.actions.end(), a);
  if (it != rec.actions.end() && *it == a) {
    throw Error("duplicate action '" + mdp_.action_names_[a] + "' at state " + rec.name);
  }
  const auto pos = it - rec.actions.begin();
  rec.actions.insert(it, a);
  rec.successors.insert(rec.successors.begin() + pos, std::move(successors));
}

void MdpBuilder::set_initial(StateId s) {
  if (s >= mdp_.states_.size()) throw Error("unknown initial state id");
  initial_ = s;
}

LeveledMdp MdpBuilder::build() && {
  auto& m = mdp_;
  if (m.states_.empty()) throw Error("MDP has no states");

  int max_level = 0;
  for (const auto& rec : m.states_) max_level = std::max(max_level, rec.level);
  m.levels_.assign(static_cast<std::size_t>(max_level), {});
  for (StateId s = 0; s < m.states_.size(); ++s) {
    m.levels_[static_cast<std::size_t>(m.states_[s].level - 1)].push_back(s);
  }

  if (initial_) {
    m.initial_ = *initial_;
  } else if (m.levels_.front().size() == 1) {
    m.initial_ = m.levels_.front().front();
  } else {
    throw Error("initial state not set and level 1 does not hold exactly one state");
  }

  m.deterministic_ = true;
  m.pair_of_element_.clear();
  m.slot_of_element_.clear();
  std::vector<bool> level_acts(m.levels_.size(), false);
  for (StateId s = 0; s < m.states_.size(); ++s) {
    auto& rec = m.states_[s];
    rec.first_element = static_cast<Element>(m.pair_of_element_.size());
    for (std::uint32_t k = 0; k < rec.actions.size(); ++k) {
      m.pair_of_element_.push_back({s, rec.actions[k]});
      m.slot_of_element_.push_back(k);
      const auto& succ = rec.successors[k];
      for (const auto& t : succ) {
        if (t.state >= m.states_.size()) throw Error("transition to unknown state id");
      }
      if (succ.size() > 1 ||
          (succ.size() == 1 && std::abs(succ.front().prob - 1.0) > kNormalizationTol)) {
        m.deterministic_ = false;
      }
    }
    if (rec.acting) level_acts[static_cast<std::size_t>(rec.level - 1)] = true;
  }
  m.acting_levels_ = static_cast<std::size_t>(std::count(level_acts.begin(), level_acts.end(), true));
  return std::move(m);
}

std::vector<Violation> validate(const LeveledMdp& mdp) {
  std::vector<Violation> out;
  const auto H = static_cast<int>(mdp.num_levels());
  for (int h = 1; h <= H; ++h) {
    if (mdp.states_at_level(h).empty()) out.push_back({"empty level", std::nullopt, h});
  }
  if (mdp.level(mdp.initial()) != 1) {
    out.push_back({"initial state not at level 1", mdp.initial(), mdp.level(mdp.initial())});
  }
  if (mdp.states_at_level(1).size() > 1) {
    out.push_back({"more than one state at level 1", std::nullopt, 1});
  }
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    const int h = mdp.level(s);
    if (!mdp.acting(s)) {
      if (h != H) out.push_back({"non-acting state before last level", s, h});
      continue;
    }
    if (mdp.num_actions(s) == 0) {
      out.push_back({"acting state without actions", s, h});
      continue;
    }
    for (std::uint32_t k = 0; k < mdp.num_actions(s); ++k) {
      const auto succ = mdp.transition(s, k);
      if (h == H) {
        if (!succ.empty()) out.push_back({"transition not level+1", s, h});
        continue;
      }
      double total = 0.0;
      bool bad_level = false;
      bool negative = false;
      for (const auto& t : succ) {
        total += t.prob;
        if (mdp.level(t.state) != h + 1) bad_level = true;
        if (t.prob < 0.0) negative = true;
      }
      if (bad_level) out.push_back({"transition not level+1", s, h});
      if (negative) out.push_back({"negative transition probability", s, h});
      if (std::abs(total - 1.0) > kNormalizationTol) {
        out.push_back({"distribution not normalized", s, h});
      }
    }
  }
  return out;
}

std::string describe(const LeveledMdp& mdp, const Violation& v) {
  std::ostringstream os;
  if (v.state) {
    os << "state " << mdp.state_name(*v.state) << " (level " << v.level << "): ";
  } else {
    os << "level " << v.level << ": ";
  }
  os << v.message;
  return os.str();
}

DeterministicPolicy DeterministicPolicy::first_action(const LeveledMdp& mdp) {
  DeterministicPolicy p(mdp.num_states());
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    if (mdp.acting(s) && mdp.num_actions(s) > 0) p.set_slot(s, 0);
  }
  return p;
}

ActionId DeterministicPolicy::action(const LeveledMdp& mdp, StateId s) const {
  const auto k = slot(s);
  if (k == kNoSlot) throw Error("incomplete policy");
  return mdp.actions(s)[k];
}

bool DeterministicPolicy::complete(const LeveledMdp& mdp) const {
  if (slots_.size() != mdp.num_states()) return false;
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    if (mdp.acting(s) && slots_[s] >= mdp.num_actions(s)) return false;
  }
  return true;
}

MixturePolicy::MixturePolicy(std::vector<DeterministicPolicy> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw Error("mixture policy must be nonempty");
}

MarginalVector MarginalVector::indicator(std::size_t m, std::span<const Element> support) {
  MarginalVector x(m);
  for (Element e : support) x[e] = 1.0;
  return x;
}

namespace {

Trajectory rollout(const LeveledMdp& mdp, const DeterministicPolicy& policy, CounterRng& rng) {
  if (policy.size() != mdp.num_states()) throw Error("incomplete policy");
  Trajectory traj;
  StateId s = mdp.initial();
  while (mdp.acting(s)) {
    const auto k = policy.slot(s);
    if (k == kNoSlot || k >= mdp.num_actions(s)) throw Error("incomplete policy");
    traj.steps.push_back({s, mdp.actions(s)[k]});
    traj.elements.push_back(mdp.element(s, k));
    const auto succ = mdp.transition(s, k);
    if (succ.empty()) break;
    StateId next = succ.back().state;
    if (succ.size() > 1) {
      const double u = rng.uniform();
      double acc = 0.0;
      for (const auto& t : succ) {
        acc += t.prob;
        if (u < acc) {
          next = t.state;
          break;
        }
      }
    }
    s = next;
  }
  traj.final_state = s;
  return traj;
}

}  // namespace

Trajectory sample_trajectory(const LeveledMdp& mdp, const DeterministicPolicy& policy,
                             std::uint64_t seed) {
  CounterRng rng(seed);
  return rollout(mdp, policy, rng);
}

Trajectory sample_trajectory(const LeveledMdp& mdp, const MixturePolicy& policy,
                             std::uint64_t seed) {
  if (policy.size() == 0) throw Error("mixture policy must be nonempty");
  CounterRng rng(seed);
  const auto member = rng.below(policy.size());
  return rollout(mdp, policy.members()[member], rng);
}

Trajectory follow(const LeveledMdp& mdp, const DeterministicPolicy& policy) {
  if (!mdp.deterministic()) throw Error("follow requires deterministic transitions");
  CounterRng unused(0);
  return rollout(mdp, policy, unused);
}

MarginalVector policy_marginals(const LeveledMdp& mdp, const DeterministicPolicy& policy) {
  MarginalVector x(mdp.ground_size());
  std::vector<double> occ(mdp.num_states(), 0.0);
  occ[mdp.initial()] = 1.0;
  for (int h = 1; h <= static_cast<int>(mdp.num_levels()); ++h) {
    for (StateId s : mdp.states_at_level(h)) {
      if (occ[s] == 0.0 || !mdp.acting(s)) continue;
      const auto k = policy.slot(s);
      if (k == kNoSlot || k >= mdp.num_actions(s)) throw Error("incomplete policy");
      x[mdp.element(s, k)] += occ[s];
      for (const auto& t : mdp.transition(s, k)) occ[t.state] += occ[s] * t.prob;
    }
  }
  return x;
}

MarginalVector mixture_marginals(const LeveledMdp& mdp, const MixturePolicy& mixture) {
  if (mixture.size() == 0) throw Error("mixture policy must be nonempty");
  MarginalVector y(mdp.ground_size());
  for (const auto& member : mixture.members()) {
    const auto x = policy_marginals(mdp, member);
    for (std::size_t e = 0; e < y.size(); ++e) y[e] += x[e];
  }
  const double inv = 1.0 / static_cast<double>(mixture.size());
  for (std::size_t e = 0; e < y.size(); ++e) y[e] *= inv;
  return y;
}

}  // namespace submdp
