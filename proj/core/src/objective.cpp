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

#include "submdp/objective.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace submdp {

namespace {

constexpr double kSymmetryTol = 1e-9;
constexpr double kPsdTol = 1e-9;

}  // namespace

PairSet PairSet::of(std::size_t ground_size, std::span<const Element> elements) {
  PairSet s(ground_size);
  for (Element e : elements) s.insert(e);
  return s;
}

void PairSet::insert(Element e) {
  auto& bit = mask_.at(e);
  if (!bit) {
    bit = 1;
    ++count_;
  }
}

void PairSet::erase(Element e) {
  auto& bit = mask_.at(e);
  if (bit) {
    bit = 0;
    --count_;
  }
}

void PairSet::clear() {
  std::fill(mask_.begin(), mask_.end(), 0);
  count_ = 0;
}

std::vector<Element> PairSet::elements() const {
  std::vector<Element> out;
  out.reserve(count_);
  for (std::size_t e = 0; e < mask_.size(); ++e) {
    if (mask_[e]) out.push_back(static_cast<Element>(e));
  }
  return out;
}

double Objective::marginal_gain(const PairSet& s, Element e) const {
  PairSet with = s;
  with.insert(e);
  PairSet without = s;
  without.erase(e);
  return evaluate(with) - evaluate(without);
}

void Objective::marginal_gains(const PairSet& s, std::span<const Element> coords,
                               std::span<double> out) const {
  for (std::size_t i = 0; i < coords.size(); ++i) out[i] = marginal_gain(s, coords[i]);
}

double Objective::exact_gradient(const MarginalVector&, Element) const {
  throw Error("no exact gradient");
}

double Objective::evaluate(std::span<const Element> elements) const {
  return evaluate(PairSet::of(ground_size(), elements));
}

// ---------------------------------------------------------------------------
// LogDetObjective

LogDetObjective::LogDetObjective(std::vector<Eigen::MatrixXd> rewards, double lambda)
    : rewards_(std::move(rewards)), lambda_(lambda) {
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) throw Error("lambda must be positive");
  if (rewards_.empty()) throw Error("log-det objective needs at least one element");
  dim_ = static_cast<std::size_t>(rewards_.front().rows());
  if (dim_ == 0) throw Error("reward matrices must be nonempty");
  const auto d = static_cast<Eigen::Index>(dim_);
  diagonal_ = true;
  for (std::size_t e = 0; e < rewards_.size(); ++e) {
    auto& r = rewards_[e];
    if (r.rows() != d || r.cols() != d) {
      throw Error("reward matrix " + std::to_string(e) + " has wrong shape");
    }
    if (!r.allFinite()) throw Error("reward matrix " + std::to_string(e) + " is not finite");
    if ((r - r.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
      throw Error("reward matrix " + std::to_string(e) + " is not symmetric");
    }
    r = 0.5 * (r + r.transpose());
    const bool diag = (r - Eigen::MatrixXd(r.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
    if (diag) {
      if (r.diagonal().minCoeff() < -kPsdTol) {
        throw Error("reward matrix " + std::to_string(e) + " is not PSD");
      }
      r.diagonal() = r.diagonal().cwiseMax(0.0);
      continue;
    }
    diagonal_ = false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r);
    if (eig.eigenvalues().minCoeff() < -kPsdTol) {
      throw Error("reward matrix " + std::to_string(e) + " is not PSD");
    }
    if (eig.eigenvalues().minCoeff() < 0.0) {
      r = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).asDiagonal() *
          eig.eigenvectors().transpose();
    }
  }
  if (diagonal_) {
    diag_.resize(d, static_cast<Eigen::Index>(rewards_.size()));
    for (std::size_t e = 0; e < rewards_.size(); ++e) {
      diag_.col(static_cast<Eigen::Index>(e)) = rewards_[e].diagonal();
    }
  }
}

LogDetObjective LogDetObjective::diagonal(const std::vector<std::vector<double>>& diags,
                                          double lambda) {
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(diags.size());
  for (const auto& v : diags) {
    Eigen::VectorXd dv = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    mats.emplace_back(dv.asDiagonal());
  }
  return LogDetObjective(std::move(mats), lambda);
}

Eigen::MatrixXd LogDetObjective::accumulate(const PairSet& s) const {
  if (s.ground_size() != rewards_.size()) throw Error("pair set does not match ground set");
  const auto d = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  const auto mask = s.mask();
  for (std::size_t e = 0; e < mask.size(); ++e) {
    if (mask[e]) m += rewards_[e];
  }
  return m;
}

double LogDetObjective::logdet_regularized(Eigen::MatrixXd m) const {
  m.diagonal().array() += lambda_;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw Error("singular regularized matrix");
  const auto& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double v = l(i, i);
    if (!(v > 0.0)) throw Error("singular regularized matrix");
    acc += std::log(v);
  }
  return 2.0 * acc;
}

double LogDetObjective::evaluate(const PairSet& s) const {
  if (!diagonal_) return evaluate_dense(s);
  if (s.ground_size() != rewards_.size()) throw Error("pair set does not match ground set");
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
  const auto mask = s.mask();
  for (std::size_t e = 0; e < mask.size(); ++e) {
    if (mask[e]) b += diag_.col(static_cast<Eigen::Index>(e));
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    const double v = b[i] + lambda_;
    if (!(v > 0.0)) throw Error("singular regularized matrix");
    acc += std::log(v);
  }
  return acc;
}

double LogDetObjective::evaluate_dense(const PairSet& s) const {
  return logdet_regularized(accumulate(s));
}

double LogDetObjective::block_value(std::span<const Element> block) const {
  return evaluate(PairSet::of(rewards_.size(), block));
}

double LogDetObjective::marginal_gain(const PairSet& s, Element e) const {
  double out = 0.0;
  const Element coords[] = {e};
  marginal_gains(s, coords, std::span<double>(&out, 1));
  return out;
}

void LogDetObjective::marginal_gains(const PairSet& s, std::span<const Element> coords,
                                     std::span<double> out) const {
  if (s.ground_size() != rewards_.size()) throw Error("pair set does not match ground set");
  const auto d = static_cast<Eigen::Index>(dim_);
  if (!diagonal_) {
    const Eigen::MatrixXd base = accumulate(s);
    const double base_value = logdet_regularized(base);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      const Element e = coords[i];
      if (s.contains(e)) {
        PairSet without = s;
        without.erase(e);
        out[i] = base_value - logdet_regularized(accumulate(without));
      } else {
        out[i] = logdet_regularized(base + rewards_.at(e)) - base_value;
      }
    }
    return;
  }
  // Per-dimension sums and contributor counts over S. A count of one means
  // removing that contributor leaves an exact zero, which keeps ln(lambda)
  // terms free of cancellation error.
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
  std::vector<std::uint32_t> nnz(dim_, 0);
  const auto mask = s.mask();
  for (std::size_t e = 0; e < mask.size(); ++e) {
    if (!mask[e]) continue;
    const auto col = diag_.col(static_cast<Eigen::Index>(e));
    b += col;
    for (Eigen::Index k = 0; k < d; ++k) nnz[static_cast<std::size_t>(k)] += col[k] != 0.0;
  }
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const Element e = coords[i];
    const auto col = diag_.col(static_cast<Eigen::Index>(e));
    const bool in = s.contains(e);
    double gain = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
      const double r = col[k];
      if (r == 0.0) continue;
      if (in) {
        const double rest = nnz[static_cast<std::size_t>(k)] == 1 ? 0.0 : b[k] - r;
        gain += std::log(b[k] + lambda_) - std::log(rest + lambda_);
      } else {
        gain += std::log(b[k] + r + lambda_) - std::log(b[k] + lambda_);
      }
    }
    out[i] = gain;
  }
}

// ---------------------------------------------------------------------------
// AdditiveObjective

AdditiveObjective::AdditiveObjective(std::vector<double> weights) : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error("additive weights must be finite and >= 0");
  }
}

double AdditiveObjective::evaluate(const PairSet& s) const {
  if (s.ground_size() != weights_.size()) throw Error("pair set does not match ground set");
  double acc = 0.0;
  const auto mask = s.mask();
  for (std::size_t e = 0; e < mask.size(); ++e) {
    if (mask[e]) acc += weights_[e];
  }
  return acc;
}

void AdditiveObjective::marginal_gains(const PairSet&, std::span<const Element> coords,
                                       std::span<double> out) const {
  for (std::size_t i = 0; i < coords.size(); ++i) out[i] = weights_.at(coords[i]);
}

double AdditiveObjective::exact_gradient(const MarginalVector&, Element e) const {
  return weights_.at(e);
}

std::optional<double> AdditiveObjective::closed_form_multilinear(const MarginalVector& x) const {
  double acc = 0.0;
  for (std::size_t e = 0; e < weights_.size(); ++e) acc += x[e] * weights_[e];
  return acc;
}

// ---------------------------------------------------------------------------
// CoverageObjective

CoverageObjective::CoverageObjective(std::vector<double> item_weights,
                                     std::vector<std::vector<std::uint32_t>> covers)
    : item_weights_(std::move(item_weights)), covers_(std::move(covers)) {
  for (double w : item_weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error("coverage weights must be finite and >= 0");
  }
  covered_by_.assign(item_weights_.size(), {});
  for (std::size_t e = 0; e < covers_.size(); ++e) {
    auto& c = covers_[e];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (auto u : c) {
      if (u >= item_weights_.size()) throw Error("coverage item out of range");
      covered_by_[u].push_back(static_cast<Element>(e));
    }
  }
}

double CoverageObjective::evaluate(const PairSet& s) const {
  if (s.ground_size() != covers_.size()) throw Error("pair set does not match ground set");
  std::vector<std::uint8_t> hit(item_weights_.size(), 0);
  const auto mask = s.mask();
  for (std::size_t e = 0; e < mask.size(); ++e) {
    if (!mask[e]) continue;
    for (auto u : covers_[e]) hit[u] = 1;
  }
  double acc = 0.0;
  for (std::size_t u = 0; u < hit.size(); ++u) {
    if (hit[u]) acc += item_weights_[u];
  }
  return acc;
}

void CoverageObjective::marginal_gains(const PairSet& s, std::span<const Element> coords,
                                       std::span<double> out) const {
  if (s.ground_size() != covers_.size()) throw Error("pair set does not match ground set");
  std::vector<std::uint32_t> count(item_weights_.size(), 0);
  const auto mask = s.mask();
  for (std::size_t e = 0; e < mask.size(); ++e) {
    if (!mask[e]) continue;
    for (auto u : covers_[e]) ++count[u];
  }
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const Element e = coords[i];
    const std::uint32_t uncovered_at = s.contains(e) ? 1 : 0;
    double gain = 0.0;
    for (auto u : covers_.at(e)) {
      if (count[u] == uncovered_at) gain += item_weights_[u];
    }
    out[i] = gain;
  }
}

double CoverageObjective::exact_gradient(const MarginalVector& x, Element e) const {
  double acc = 0.0;
  for (auto u : covers_.at(e)) {
    double miss = 1.0;
    for (Element other : covered_by_[u]) {
      if (other != e) miss *= 1.0 - x[other];
    }
    acc += item_weights_[u] * miss;
  }
  return acc;
}

std::optional<double> CoverageObjective::closed_form_multilinear(const MarginalVector& x) const {
  double acc = 0.0;
  for (std::size_t u = 0; u < item_weights_.size(); ++u) {
    double miss = 1.0;
    for (Element e : covered_by_[u]) miss *= 1.0 - x[e];
    acc += item_weights_[u] * (1.0 - miss);
  }
  return acc;
}

// ---------------------------------------------------------------------------

std::optional<double> ShiftedObjective::closed_form_multilinear(const MarginalVector& x) const {
  auto v = inner_->closed_form_multilinear(x);
  if (v) *v += shift_;
  return v;
}

ObjectivePtr normalized(ObjectivePtr obj) {
  const double empty = obj->evaluate(PairSet(obj->ground_size()));
  if (empty == 0.0) return obj;
  return std::make_shared<ShiftedObjective>(std::move(obj), -empty);
}

const Objective& base_objective(const Objective& obj) {
  const Objective* cur = &obj;
  while (const auto* shifted = dynamic_cast<const ShiftedObjective*>(cur)) cur = &shifted->inner();
  return *cur;
}

}  // namespace submdp
