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

#ifndef SUBMDP_MDP_HPP
#define SUBMDP_MDP_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace submdp {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;
/// Dense index into the ground set of legal state-action pairs.
using Element = std::uint32_t;

inline constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Successor {
  StateId state;
  double prob;
};

struct StateActionPair {
  StateId state;
  ActionId action;
  friend bool operator==(const StateActionPair&, const StateActionPair&) = default;
};

/// Finite-horizon MDP whose states are partitioned into levels 1..H. Every
/// transition from a level-h state lands on level h+1. Acting states at the
/// last level end the episode after their action; non-acting states emit no
/// pair. Immutable once built; see MdpBuilder.
class LeveledMdp {
 public:
  std::size_t num_levels() const noexcept { return levels_.size(); }
  std::size_t num_states() const noexcept { return states_.size(); }
  /// Number of distinct levels holding at least one acting state.
  std::size_t acting_levels() const noexcept { return acting_levels_; }

  StateId initial() const noexcept { return initial_; }
  int level(StateId s) const { return states_.at(s).level; }
  bool acting(StateId s) const { return states_.at(s).acting; }
  const std::string& state_name(StateId s) const { return states_.at(s).name; }
  std::optional<StateId> find_state(std::string_view name) const;

  std::span<const StateId> states_at_level(int h) const;

  /// Legal actions of s in ascending id order; empty for non-acting states.
  std::span<const ActionId> actions(StateId s) const;
  std::size_t num_actions(StateId s) const { return actions(s).size(); }
  /// Position of `a` in actions(s), or kNoSlot when illegal.
  std::uint32_t slot_of(StateId s, ActionId a) const;
  std::span<const Successor> transition(StateId s, std::uint32_t slot) const;
  /// Only valid on deterministic MDPs; nullopt when the action ends the episode.
  std::optional<StateId> next_state(StateId s, std::uint32_t slot) const;

  bool deterministic() const noexcept { return deterministic_; }

  const std::string& action_name(ActionId a) const { return action_names_.at(a); }
  std::optional<ActionId> find_action(std::string_view name) const;
  std::size_t num_action_ids() const noexcept { return action_names_.size(); }

  // Ground set: legal pairs ordered by state id, then by action slot.
  std::size_t ground_size() const noexcept { return pair_of_element_.size(); }
  Element element(StateId s, std::uint32_t slot) const;
  Element element_for(StateId s, ActionId a) const;
  StateActionPair pair(Element e) const { return pair_of_element_.at(e); }
  StateId state_of(Element e) const { return pair_of_element_.at(e).state; }
  std::uint32_t slot_of_element(Element e) const { return slot_of_element_.at(e); }

 private:
  friend class MdpBuilder;

  struct StateRecord {
    std::string name;
    int level = 0;
    bool acting = false;
    std::vector<ActionId> actions;
    std::vector<std::vector<Successor>> successors;
    Element first_element = 0;
  };

  std::vector<StateRecord> states_;
  std::vector<std::vector<StateId>> levels_;
  std::vector<std::string> action_names_;
  std::vector<StateActionPair> pair_of_element_;
  std::vector<std::uint32_t> slot_of_element_;
  StateId initial_ = 0;
  std::size_t acting_levels_ = 0;
  bool deterministic_ = true;
};

/// Incremental constructor for LeveledMdp. build() rejects structural errors
/// (unknown ids, duplicate actions, missing initial state); semantic checks
/// such as normalization live in validate().
class MdpBuilder {
 public:
  ActionId add_action_name(std::string name);
  StateId add_state(std::string name, int level, bool acting);
  /// Declares `a` legal at `s` with the given successor distribution. An empty
  /// distribution means the action ends the episode.
  void add_transition(StateId s, ActionId a, std::vector<Successor> successors);
  void set_initial(StateId s);
  std::size_t num_states() const noexcept { return mdp_.states_.size(); }

  LeveledMdp build() &&;

 private:
  LeveledMdp mdp_;
  std::optional<StateId> initial_;
};

struct Violation {
  std::string message;
  std::optional<StateId> state;
  int level = 0;
};

/// Empty iff the MDP satisfies every structural invariant.
std::vector<Violation> validate(const LeveledMdp& mdp);
std::string describe(const LeveledMdp& mdp, const Violation& v);

/// One legal action per acting state, stored as a slot into actions(s).
class DeterministicPolicy {
 public:
  DeterministicPolicy() = default;
  explicit DeterministicPolicy(std::size_t num_states) : slots_(num_states, kNoSlot) {}

  /// Policy choosing the first legal action everywhere.
  static DeterministicPolicy first_action(const LeveledMdp& mdp);

  std::uint32_t slot(StateId s) const { return slots_.at(s); }
  void set_slot(StateId s, std::uint32_t slot) { slots_.at(s) = slot; }
  bool defined(StateId s) const { return slots_.at(s) != kNoSlot; }
  std::size_t size() const noexcept { return slots_.size(); }
  ActionId action(const LeveledMdp& mdp, StateId s) const;

  /// True when every acting state has a legal slot.
  bool complete(const LeveledMdp& mdp) const;

  friend bool operator==(const DeterministicPolicy&, const DeterministicPolicy&) = default;

 private:
  std::vector<std::uint32_t> slots_;
};

/// Uniform mixture: draw one member per episode, then follow it throughout.
class MixturePolicy {
 public:
  MixturePolicy() = default;
  explicit MixturePolicy(std::vector<DeterministicPolicy> members);

  std::span<const DeterministicPolicy> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  void add(DeterministicPolicy p) { members_.push_back(std::move(p)); }

 private:
  std::vector<DeterministicPolicy> members_;
};

struct Trajectory {
  std::vector<StateActionPair> steps;
  std::vector<Element> elements;
  StateId final_state = 0;
};

/// Per-element probability in [0, 1].
class MarginalVector {
 public:
  MarginalVector() = default;
  explicit MarginalVector(std::size_t m, double fill = 0.0) : v_(m, fill) {}
  explicit MarginalVector(std::vector<double> v) : v_(std::move(v)) {}

  std::size_t size() const noexcept { return v_.size(); }
  double operator[](std::size_t e) const { return v_[e]; }
  double& operator[](std::size_t e) { return v_[e]; }
  std::span<const double> values() const noexcept { return v_; }
  std::span<double> values() noexcept { return v_; }

  static MarginalVector indicator(std::size_t m, std::span<const Element> support);

 private:
  std::vector<double> v_;
};

/// Rolls out one episode. A mixture draws its member from the same stream.
Trajectory sample_trajectory(const LeveledMdp& mdp, const DeterministicPolicy& policy,
                             std::uint64_t seed);
Trajectory sample_trajectory(const LeveledMdp& mdp, const MixturePolicy& policy,
                             std::uint64_t seed);

/// The unique trajectory of a deterministic policy on a deterministic MDP.
Trajectory follow(const LeveledMdp& mdp, const DeterministicPolicy& policy);

/// Exact visit probabilities by a forward pass over levels.
MarginalVector policy_marginals(const LeveledMdp& mdp, const DeterministicPolicy& policy);
MarginalVector mixture_marginals(const LeveledMdp& mdp, const MixturePolicy& mixture);

// Text serialization (see README for the grammar).
void write_mdp(std::ostream& out, const LeveledMdp& mdp);
LeveledMdp read_mdp(std::istream& in);

}  // namespace submdp

#endif  // SUBMDP_MDP_HPP
