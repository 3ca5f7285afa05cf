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

#ifndef SUBMDP_OBJECTIVE_HPP
#define SUBMDP_OBJECTIVE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "submdp/mdp.hpp"

namespace submdp {

/// Subset of the ground set, stored as a membership mask.
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(std::size_t ground_size) : mask_(ground_size, 0) {}
  static PairSet of(std::size_t ground_size, std::span<const Element> elements);

  std::size_t ground_size() const noexcept { return mask_.size(); }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  bool contains(Element e) const { return mask_.at(e) != 0; }
  void insert(Element e);
  void erase(Element e);
  void clear();
  std::vector<Element> elements() const;
  std::span<const std::uint8_t> mask() const noexcept { return mask_; }

  friend bool operator==(const PairSet& a, const PairSet& b) { return a.mask_ == b.mask_; }

 private:
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

/// Monotone submodular set function over a ground set of size m. Pure and
/// thread-safe: concurrent calls on the same instance are allowed.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::string_view kind() const noexcept = 0;
  virtual std::size_t ground_size() const noexcept = 0;
  virtual double evaluate(const PairSet& s) const = 0;

  /// f(S + e) - f(S - e).
  virtual double marginal_gain(const PairSet& s, Element e) const;

  /// Batched marginal_gain over `coords` against one base set. Implementations
  /// amortize the base-set work; results match the per-coordinate definition.
  virtual void marginal_gains(const PairSet& s, std::span<const Element> coords,
                              std::span<double> out) const;

  /// Whether exact_gradient() is available.
  virtual bool has_exact_gradient() const noexcept { return false; }
  /// Exact partial derivative of the multilinear extension at x. Throws
  /// "no exact gradient" when unsupported.
  virtual double exact_gradient(const MarginalVector& x, Element e) const;

  /// Closed-form multilinear extension, when the family admits one.
  virtual std::optional<double> closed_form_multilinear(const MarginalVector&) const {
    return std::nullopt;
  }

  double evaluate(std::span<const Element> elements) const;
};

using ObjectivePtr = std::shared_ptr<const Objective>;

/// ln det(sum_{e in S} R_e + lambda I) over PSD reward matrices. All-diagonal
/// inputs take an O(d) per-element fast path; anything else goes through a
/// Cholesky factorization.
class LogDetObjective final : public Objective {
 public:
  LogDetObjective(std::vector<Eigen::MatrixXd> rewards, double lambda);
  /// Diagonal rewards given as one length-d vector per element.
  static LogDetObjective diagonal(const std::vector<std::vector<double>>& diags, double lambda);

  std::string_view kind() const noexcept override { return "logdet"; }
  std::size_t ground_size() const noexcept override { return rewards_.size(); }
  using Objective::evaluate;
  double evaluate(const PairSet& s) const override;
  double marginal_gain(const PairSet& s, Element e) const override;
  void marginal_gains(const PairSet& s, std::span<const Element> coords,
                      std::span<double> out) const override;

  /// Always factorizes, bypassing the diagonal fast path.
  double evaluate_dense(const PairSet& s) const;
  /// ln det(sum of the given rewards + lambda I), duplicates counted once.
  double block_value(std::span<const Element> block) const;

  std::size_t dim() const noexcept { return dim_; }
  double lambda() const noexcept { return lambda_; }
  bool is_diagonal() const noexcept { return diagonal_; }
  const Eigen::MatrixXd& reward(Element e) const { return rewards_.at(e); }

 private:
  Eigen::MatrixXd accumulate(const PairSet& s) const;
  double logdet_regularized(Eigen::MatrixXd m) const;

  std::vector<Eigen::MatrixXd> rewards_;
  Eigen::MatrixXd diag_;  // d x m, column e = diagonal of R_e (diagonal mode only)
  std::size_t dim_ = 0;
  double lambda_ = 0.0;
  bool diagonal_ = false;
};

/// f(S) = sum of nonnegative per-element weights.
class AdditiveObjective final : public Objective {
 public:
  explicit AdditiveObjective(std::vector<double> weights);

  std::string_view kind() const noexcept override { return "additive"; }
  std::size_t ground_size() const noexcept override { return weights_.size(); }
  using Objective::evaluate;
  double evaluate(const PairSet& s) const override;
  double marginal_gain(const PairSet&, Element e) const override { return weights_.at(e); }
  void marginal_gains(const PairSet& s, std::span<const Element> coords,
                      std::span<double> out) const override;
  bool has_exact_gradient() const noexcept override { return true; }
  double exact_gradient(const MarginalVector& x, Element e) const override;
  std::optional<double> closed_form_multilinear(const MarginalVector& x) const override;

  double weight(Element e) const { return weights_.at(e); }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

/// Weighted coverage: f(S) = w(union of cover(e) for e in S).
class CoverageObjective final : public Objective {
 public:
  CoverageObjective(std::vector<double> item_weights, std::vector<std::vector<std::uint32_t>> covers);

  std::string_view kind() const noexcept override { return "coverage"; }
  std::size_t ground_size() const noexcept override { return covers_.size(); }
  using Objective::evaluate;
  double evaluate(const PairSet& s) const override;
  void marginal_gains(const PairSet& s, std::span<const Element> coords,
                      std::span<double> out) const override;
  bool has_exact_gradient() const noexcept override { return true; }
  double exact_gradient(const MarginalVector& x, Element e) const override;
  std::optional<double> closed_form_multilinear(const MarginalVector& x) const override;

  std::size_t universe_size() const noexcept { return item_weights_.size(); }
  std::span<const std::uint32_t> cover(Element e) const { return covers_.at(e); }
  std::span<const double> item_weights() const noexcept { return item_weights_; }

 private:
  std::vector<double> item_weights_;
  std::vector<std::vector<std::uint32_t>> covers_;
  std::vector<std::vector<Element>> covered_by_;
};

/// f(S) + shift. Gains, gradients and argmaxes are unchanged.
class ShiftedObjective final : public Objective {
 public:
  ShiftedObjective(ObjectivePtr inner, double shift) : inner_(std::move(inner)), shift_(shift) {}

  std::string_view kind() const noexcept override { return inner_->kind(); }
  std::size_t ground_size() const noexcept override { return inner_->ground_size(); }
  using Objective::evaluate;
  double evaluate(const PairSet& s) const override { return inner_->evaluate(s) + shift_; }
  double marginal_gain(const PairSet& s, Element e) const override {
    return inner_->marginal_gain(s, e);
  }
  void marginal_gains(const PairSet& s, std::span<const Element> coords,
                      std::span<double> out) const override {
    inner_->marginal_gains(s, coords, out);
  }
  bool has_exact_gradient() const noexcept override { return inner_->has_exact_gradient(); }
  double exact_gradient(const MarginalVector& x, Element e) const override {
    return inner_->exact_gradient(x, e);
  }
  std::optional<double> closed_form_multilinear(const MarginalVector& x) const override;

  const Objective& inner() const noexcept { return *inner_; }
  double shift() const noexcept { return shift_; }

 private:
  ObjectivePtr inner_;
  double shift_;
};

/// Wraps `obj` so that f(empty set) == 0. For log-det this adds -d ln(lambda).
ObjectivePtr normalized(ObjectivePtr obj);

/// Unwraps any ShiftedObjective layers.
const Objective& base_objective(const Objective& obj);

/// Reads an objective file. The first `objective <kind>` line selects the
/// family (logdet when absent); see README for the line grammar.
ObjectivePtr read_objective(std::istream& in, std::size_t ground_size);
void write_objective(std::ostream& out, const Objective& obj);

}  // namespace submdp

#endif  // SUBMDP_OBJECTIVE_HPP
