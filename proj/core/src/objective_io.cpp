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

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "submdp/objective.hpp"

namespace submdp {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error("objective parse error at line " + std::to_string(line) + ": " + what);
}

}  // namespace

ObjectivePtr read_objective(std::istream& in, std::size_t ground_size) {
  std::string kind = "logdet";
  bool kind_seen = false;
  double lambda = 1e-5;
  std::size_t dim = 0;
  std::size_t universe = 0;
  std::vector<Eigen::MatrixXd> mats(ground_size);
  std::vector<bool> mat_set(ground_size, false);
  std::vector<double> weights(ground_size, 0.0);
  std::vector<std::vector<std::uint32_t>> covers(ground_size);
  std::vector<std::pair<std::size_t, double>> item_weights;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw) || kw.front() == '#' || kw.front() == ';') continue;
    if (kw == "objective") {
      if (kind_seen) parse_error(line_no, "duplicate objective line");
      if (!(ls >> kind) || (kind != "logdet" && kind != "additive" && kind != "coverage")) {
        parse_error(line_no, "objective kind must be logdet, additive or coverage");
      }
      kind_seen = true;
    } else if (kw == "lambda") {
      if (!(ls >> lambda)) parse_error(line_no, "bad lambda");
    } else if (kw == "dim") {
      if (!(ls >> dim) || dim == 0) parse_error(line_no, "bad dim");
    } else if (kw == "universe") {
      if (!(ls >> universe)) parse_error(line_no, "bad universe size");
    } else if (kw == "weight") {
      std::size_t u = 0;
      double w = 0.0;
      if (!(ls >> u >> w)) parse_error(line_no, "expected 'weight <item> <w>'");
      item_weights.emplace_back(u, w);
    } else if (kw == "elem") {
      std::size_t e = 0;
      std::string mode;
      if (!(ls >> e >> mode)) parse_error(line_no, "expected 'elem <index> <mode> ...'");
      if (e >= ground_size) parse_error(line_no, "element index out of range");
      std::vector<double> vals;
      double v = 0.0;
      while (ls >> v) vals.push_back(v);
      if (!ls.eof()) parse_error(line_no, "non-numeric value");
      if (mode == "diag" || mode == "dense") {
        std::size_t d = mode == "diag" ? vals.size() : 0;
        if (mode == "dense") {
          while (d * d < vals.size()) ++d;
          if (d * d != vals.size()) parse_error(line_no, "dense matrix is not square");
        }
        if (d == 0) parse_error(line_no, "empty matrix");
        if (dim == 0) dim = d;
        if (d != dim) parse_error(line_no, "matrix dimension mismatch");
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t j = 0; j < d; ++j) {
            if (mode == "diag") {
              if (i == j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = vals[i];
            } else {
              m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vals[i * d + j];
            }
          }
        }
        mats[e] = std::move(m);
        mat_set[e] = true;
      } else if (mode == "weight") {
        if (vals.size() != 1) parse_error(line_no, "expected one weight");
        weights[e] = vals.front();
      } else if (mode == "covers") {
        for (double u : vals) {
          if (u < 0 || u != static_cast<double>(static_cast<std::uint32_t>(u))) {
            parse_error(line_no, "cover items must be nonnegative integers");
          }
          covers[e].push_back(static_cast<std::uint32_t>(u));
        }
      } else {
        parse_error(line_no, "unknown element mode '" + mode + "'");
      }
    } else {
      parse_error(line_no, "unknown keyword '" + kw + "'");
    }
  }

  if (kind == "additive") return std::make_shared<AdditiveObjective>(std::move(weights));
  if (kind == "coverage") {
    for (const auto& c : covers) {
      for (auto u : c) universe = std::max<std::size_t>(universe, u + 1);
    }
    std::vector<double> w(universe, 1.0);
    for (auto [u, wt] : item_weights) {
      if (u >= universe) throw Error("weight for item outside universe");
      w[u] = wt;
    }
    return std::make_shared<CoverageObjective>(std::move(w), std::move(covers));
  }
  if (dim == 0) throw Error("log-det objective needs 'dim' or at least one matrix");
  for (std::size_t e = 0; e < ground_size; ++e) {
    if (!mat_set[e]) {
      mats[e] = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    }
  }
  return std::make_shared<LogDetObjective>(std::move(mats), lambda);
}

void write_objective(std::ostream& out, const Objective& obj) {
  const auto old_precision = out.precision(17);
  const Objective& base = base_objective(obj);
  if (const auto* ld = dynamic_cast<const LogDetObjective*>(&base)) {
    out << "objective logdet\nlambda " << ld->lambda() << "\ndim " << ld->dim() << '\n';
    for (Element e = 0; e < ld->ground_size(); ++e) {
      const auto& r = ld->reward(e);
      if (ld->is_diagonal()) {
        out << "elem " << e << " diag";
        for (Eigen::Index i = 0; i < r.rows(); ++i) out << ' ' << r(i, i);
      } else {
        out << "elem " << e << " dense";
        for (Eigen::Index i = 0; i < r.rows(); ++i) {
          for (Eigen::Index j = 0; j < r.cols(); ++j) out << ' ' << r(i, j);
        }
      }
      out << '\n';
    }
  } else if (const auto* add = dynamic_cast<const AdditiveObjective*>(&base)) {
    out << "objective additive\n";
    for (Element e = 0; e < add->ground_size(); ++e) {
      out << "elem " << e << " weight " << add->weight(e) << '\n';
    }
  } else if (const auto* cov = dynamic_cast<const CoverageObjective*>(&base)) {
    out << "objective coverage\nuniverse " << cov->universe_size() << '\n';
    for (std::size_t u = 0; u < cov->universe_size(); ++u) {
      out << "weight " << u << ' ' << cov->item_weights()[u] << '\n';
    }
    for (Element e = 0; e < cov->ground_size(); ++e) {
      out << "elem " << e << " covers";
      for (auto u : cov->cover(e)) out << ' ' << u;
      out << '\n';
    }
  } else {
    throw Error("objective kind cannot be serialized");
  }
  out.precision(old_precision);
}

}  // namespace submdp
