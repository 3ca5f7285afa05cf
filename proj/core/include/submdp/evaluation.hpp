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

#ifndef SUBMDP_EVALUATION_HPP
#define SUBMDP_EVALUATION_HPP

#include <cstddef>
#include <cstdint>

#include "submdp/mdp.hpp"
#include "submdp/objective.hpp"

namespace submdp {

/// Expected objective of a policy: exact on deterministic MDPs, otherwise the
/// mean over `rollouts` sampled episodes.
double policy_value(const LeveledMdp& mdp, const Objective& obj, const DeterministicPolicy& policy,
                    std::size_t rollouts = 100, std::uint64_t seed = 0);

/// Expected objective of a uniform mixture; on deterministic MDPs this is the
/// exact mean of the member values.
double mixture_value(const LeveledMdp& mdp, const Objective& obj, const MixturePolicy& mixture,
                     std::size_t rollouts = 100, std::uint64_t seed = 0);

}  // namespace submdp

#endif  // SUBMDP_EVALUATION_HPP
