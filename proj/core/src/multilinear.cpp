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

#include "submdp/multilinear.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "submdp/parallel.hpp"

namespace submdp {

namespace {

constexpr double kRangeSlack = 1e-12;

}  // namespace

void check_marginals(const MarginalVector& x) {
  for (std::size_t e = 0; e < x.size(); ++e) {
    const double v = x[e];
    if (!(v >= -kRangeSlack && v <= 1.0 + kRangeSlack)) throw Error("marginal out of range");
  }
}

PairSet sample_set(const MarginalVector& x, CounterRng& rng) {
  PairSet s(x.size());
  for (std::size_t e = 0; e < x.size(); ++e) {
    // Draw for every coordinate so stream positions do not depend on x.
    const double u = rng.uniform();
    if (u < x[e]) s.insert(static_cast<Element>(e));
  }
  return s;
}

PairSet sample_set(const MarginalVector& x, std::uint64_t seed) {
  check_marginals(x);
  CounterRng rng(seed);
  return sample_set(x, rng);
}

ValueEstimate estimate_value_stats(const Objective& obj, const MarginalVector& x,
                                   std::size_t samples, std::uint64_t seed, unsigned threads) {
  if (samples == 0) throw Error("sample count must be >= 1");
  if (x.size() != obj.ground_size()) throw Error("marginal vector does not match ground set");
  check_marginals(x);
  std::vector<double> vals(samples);
  parallel_for(samples, threads, [&](std::size_t r) {
    CounterRng rng(seed, {r});
    vals[r] = obj.evaluate(sample_set(x, rng));
  });
  ValueEstimate est;
  est.samples = samples;
  double sum = 0.0;
  for (double v : vals) sum += v;
  est.mean = sum / static_cast<double>(samples);
  if (samples > 1) {
    double ss = 0.0;
    for (double v : vals) ss += (v - est.mean) * (v - est.mean);
    est.stddev = std::sqrt(ss / static_cast<double>(samples - 1));
  }
  return est;
}

double estimate_value(const Objective& obj, const MarginalVector& x, std::size_t samples,
                      std::uint64_t seed, unsigned threads) {
  return estimate_value_stats(obj, x, samples, seed, threads).mean;
}

GradientEstimate estimate_gradient(const Objective& obj, const MarginalVector& x,
                                   std::span<const Element> coords, std::size_t samples,
                                   std::uint64_t seed, const GradientOptions& options) {
  if (x.size() != obj.ground_size()) throw Error("marginal vector does not match ground set");
  check_marginals(x);
  GradientEstimate est;
  est.coords.assign(coords.begin(), coords.end());
  est.w.assign(coords.size(), 0.0);

  if (options.prefer_exact && obj.has_exact_gradient()) {
    for (std::size_t i = 0; i < coords.size(); ++i) est.w[i] = obj.exact_gradient(x, coords[i]);
    est.exact = true;
    return est;
  }
  if (samples == 0) throw Error("sample count must be >= 1");
  est.samples_used = samples;
  const std::size_t k = coords.size();
  // gains[r * k + i]; summed in r order afterwards so the result is
  // independent of scheduling.
  std::vector<double> gains(samples * k, 0.0);
  if (options.shared_batch) {
    parallel_for(samples, options.threads, [&](std::size_t r) {
      CounterRng rng(seed, {options.iteration, r});
      const PairSet s = sample_set(x, rng);
      obj.marginal_gains(s, coords, std::span<double>(gains.data() + r * k, k));
    });
  } else {
    parallel_for(k, options.threads, [&](std::size_t i) {
      const Element e = coords[i];
      for (std::size_t r = 0; r < samples; ++r) {
        CounterRng rng(seed, {options.iteration, r, static_cast<std::uint64_t>(e) + 1});
        gains[r * k + i] = obj.marginal_gain(sample_set(x, rng), e);
      }
    });
  }
  for (std::size_t r = 0; r < samples; ++r) {
    for (std::size_t i = 0; i < k; ++i) est.w[i] += gains[r * k + i];
  }
  const double inv = 1.0 / static_cast<double>(samples);
  for (double& v : est.w) v *= inv;
  return est;
}

double exact_value(const Objective& obj, const MarginalVector& x) {
  if (x.size() != obj.ground_size()) throw Error("marginal vector does not match ground set");
  check_marginals(x);
  PairSet base(x.size());
  std::vector<Element> frac;
  std::vector<double> p;
  for (std::size_t e = 0; e < x.size(); ++e) {
    const double v = std::clamp(x[e], 0.0, 1.0);
    if (v >= 1.0) {
      base.insert(static_cast<Element>(e));
    } else if (v > 0.0) {
      frac.push_back(static_cast<Element>(e));
      p.push_back(v);
    }
  }
  if (frac.size() > kMaxExactFractional) throw Error("exact evaluation infeasible");

  const std::size_t n = frac.size();
  const std::uint64_t subsets = std::uint64_t{1} << n;
  double total = 0.0;
  PairSet s = base;
  std::uint64_t gray_prev = 0;
  for (std::uint64_t i = 0; i < subsets; ++i) {
    // Gray-code walk: consecutive subsets differ in exactly one element.
    const std::uint64_t gray = i ^ (i >> 1);
    const std::uint64_t flip = gray ^ gray_prev;
    if (flip) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(flip));
      if (gray & flip) {
        s.insert(frac[bit]);
      } else {
        s.erase(frac[bit]);
      }
    }
    gray_prev = gray;
    double prob = 1.0;
    for (std::size_t b = 0; b < n; ++b) prob *= (gray >> b & 1u) ? p[b] : 1.0 - p[b];
    if (prob != 0.0) total += prob * obj.evaluate(s);
  }
  return total;
}

std::optional<double> try_exact_multilinear(const Objective& obj, const MarginalVector& x) {
  if (auto v = obj.closed_form_multilinear(x)) return v;
  std::size_t fractional = 0;
  for (std::size_t e = 0; e < x.size(); ++e) fractional += x[e] > 0.0 && x[e] < 1.0;
  if (fractional > kMaxExactFractional) return std::nullopt;
  return exact_value(obj, x);
}

}  // namespace submdp
