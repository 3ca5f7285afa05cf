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

#ifndef SUBMDP_MULTILINEAR_HPP
#define SUBMDP_MULTILINEAR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "submdp/objective.hpp"
#include "submdp/rng.hpp"

namespace submdp {

/// Largest number of fractional coordinates exact_value() will enumerate.
inline constexpr std::size_t kMaxExactFractional = 22;

/// Throws "marginal out of range" unless every entry lies in [-1e-12, 1+1e-12].
void check_marginals(const MarginalVector& x);

/// Includes each element independently with probability x_e.
PairSet sample_set(const MarginalVector& x, CounterRng& rng);
PairSet sample_set(const MarginalVector& x, std::uint64_t seed);

struct ValueEstimate {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation of the R draws
  std::size_t samples = 0;
};

/// Monte-Carlo F(x): mean of f over R sampled sets. Sample r uses the stream
/// (seed, r), so the result does not depend on `threads`.
ValueEstimate estimate_value_stats(const Objective& obj, const MarginalVector& x,
                                   std::size_t samples, std::uint64_t seed, unsigned threads = 1);
double estimate_value(const Objective& obj, const MarginalVector& x, std::size_t samples,
                      std::uint64_t seed, unsigned threads = 1);

struct GradientOptions {
  /// One batch of R sets reused for every coordinate; false draws R fresh
  /// sets per coordinate.
  bool shared_batch = true;
  /// Use Objective::exact_gradient when the objective provides it.
  bool prefer_exact = false;
  /// Stream key component, e.g. the continuous-greedy iteration.
  std::uint64_t iteration = 0;
  unsigned threads = 1;
};

struct GradientEstimate {
  std::vector<Element> coords;
  std::vector<double> w;
  std::size_t samples_used = 0;
  bool exact = false;
};

/// w(e) = mean over sampled S of f(S + e) - f(S - e), an unbiased estimate of
/// the partial derivative of F at x.
GradientEstimate estimate_gradient(const Objective& obj, const MarginalVector& x,
                                   std::span<const Element> coords, std::size_t samples,
                                   std::uint64_t seed, const GradientOptions& options = {});

/// Exact F(x) by enumerating every subset of the fractional coordinates.
/// Throws "exact evaluation infeasible" beyond kMaxExactFractional of them.
double exact_value(const Objective& obj, const MarginalVector& x);

/// Closed form when the objective has one, otherwise exact_value() if
/// feasible, otherwise nullopt.
std::optional<double> try_exact_multilinear(const Objective& obj, const MarginalVector& x);

}  // namespace submdp

#endif  // SUBMDP_MULTILINEAR_HPP
