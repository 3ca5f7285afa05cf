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

#include "submdp/evaluation.hpp"

#include "submdp/rng.hpp"

namespace submdp {

double policy_value(const LeveledMdp& mdp, const Objective& obj, const DeterministicPolicy& policy,
                    std::size_t rollouts, std::uint64_t seed) {
  if (mdp.deterministic()) return obj.evaluate(follow(mdp, policy).elements);
  if (rollouts == 0) throw Error("rollout count must be >= 1");
  double acc = 0.0;
  for (std::size_t r = 0; r < rollouts; ++r) {
    acc += obj.evaluate(sample_trajectory(mdp, policy, derive_seed(seed, {r})).elements);
  }
  return acc / static_cast<double>(rollouts);
}

double mixture_value(const LeveledMdp& mdp, const Objective& obj, const MixturePolicy& mixture,
                     std::size_t rollouts, std::uint64_t seed) {
  if (mixture.size() == 0) throw Error("mixture policy must be nonempty");
  if (mdp.deterministic()) {
    double acc = 0.0;
    for (const auto& member : mixture.members()) acc += policy_value(mdp, obj, member);
    return acc / static_cast<double>(mixture.size());
  }
  if (rollouts == 0) throw Error("rollout count must be >= 1");
  double acc = 0.0;
  for (std::size_t r = 0; r < rollouts; ++r) {
    acc += obj.evaluate(sample_trajectory(mdp, mixture, derive_seed(seed, {r})).elements);
  }
  return acc / static_cast<double>(rollouts);
}

}  // namespace submdp
