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

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "submdp/harness.hpp"
#include "submdp/render.hpp"
#include "test_util.hpp"

using namespace submdp;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_experiment_config(in);
}

const char* kTwoAlgos = R"(
[experiment]
repetitions = 3
seed = 5

[environment syn]
kind = synthetic
n = 5
t = 2

[environment card]
kind = cardinality
items = 6
k = 2

[algorithm a]
type = cg
delta = 0.1
samples = 5
rounding = high

[algorithm b]
type = cg
delta = 0.1
samples = 5
rounding = high
)";

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = parse(kTwoAlgos);
  CHECK(cfg.repetitions == 3);
  CHECK(cfg.envs.size() == 2);
  CHECK(cfg.envs[1].kind == EnvKind::kCardinality);
  CHECK(cfg.algos[0].rounding == Rounding::kHigh);
  CHECK(cfg.algos[0].delta == 0.1);

  CHECK_THROWS_AS(parse("[experiment]\nrepetitions = 0\n[environment e]\n[algorithm a]\n"), Error);
  CHECK_THROWS_AS(parse("[experiment]\nbogus = 1\n"), Error);
  CHECK_THROWS_AS(parse("[environment e]\nkind = moon\n[algorithm a]\n"), Error);
  CHECK_THROWS_AS(parse("[environment e]\n[algorithm a]\nrounding = maybe\n"), Error);
  CHECK_THROWS_AS(parse("[environment e]\n[algorithm a]\ndelta = abc\n"), Error);
  CHECK_THROWS_AS(parse("[experiment]\n"), Error);
}

TEST_CASE("identical algorithm entries give identical values; results are paired and ordered") {
  const ExperimentResults res = run_experiment(parse(kTwoAlgos));
  REQUIRE(res.rows.size() == 12);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(res.rows[i].algorithm == "a");
    CHECK(res.rows[i].repetition == i);
    CHECK(res.rows[i].value == res.rows[i + 3].value);
    CHECK(std::isfinite(res.rows[i].value));
    CHECK_FALSE(res.rows[i].error.has_value());
  }
  CHECK(res.rows[6].env == "card");
  CHECK(res.summary.size() == 4);
}

TEST_CASE("cardinality SUB runs stay above the continuous greedy bound") {
  ExperimentConfig cfg = parse(R"(
[experiment]
repetitions = 5
seed = 1
[environment card]
kind = cardinality
items = 8
k = 3
[algorithm cg]
type = cg
delta = 0.01
samples = 200
rounding = sub
[algorithm opt]
type = optimal
)");
  const ExperimentResults res = run_experiment(cfg);
  for (std::size_t r = 0; r < 5; ++r) {
    CHECK(res.rows[r].value >= (1.0 - 1.0 / std::exp(1.0) - 0.05) * res.rows[5 + r].value);
  }
}

TEST_CASE("errors become rows, not aborts") {
  const ExperimentResults res = run_experiment(parse(R"(
[experiment]
repetitions = 2
[environment card]
kind = cardinality
[algorithm dp]
type = dp
[algorithm opt]
type = optimal
)"));
  REQUIRE(res.rows.size() == 4);
  CHECK(res.rows[0].error.has_value());
  CHECK(std::isnan(res.rows[0].value));
  CHECK(std::isfinite(res.rows[2].value));
  CHECK(res.summary[0].n == 0);
  CHECK(res.summary[1].n == 2);
}

TEST_CASE("summary statistics and output formats") {
  std::vector<ResultRow> rows;
  for (int i = 1; i <= 3; ++i) rows.push_back({.env = "e", .algorithm = "a", .repetition = std::size_t(i - 1), .value = double(i)});
  for (int i = 0; i < 3; ++i) rows.push_back({.env = "e", .algorithm = "b", .repetition = std::size_t(i), .value = 0.5});
  ExperimentResults res{rows, summarize(rows)};
  REQUIRE(res.summary.size() == 2);
  CHECK(res.summary[0].mean == 2.0);
  CHECK(res.summary[0].std == 1.0);
  CHECK(res.summary[0].n == 3);

  std::ostringstream csv, sum, json;
  write_results_csv(csv, res);
  write_summary_csv(sum, res);
  write_results_json(json, res);
  std::istringstream lines(csv.str());
  std::string line;
  int n = 0;
  std::getline(lines, line);
  CHECK(line == "env,algorithm,repetition,seed,value,wall_ms");
  while (std::getline(lines, line)) ++n;
  CHECK(n == 6);
  CHECK(sum.str() == "env,algorithm,mean,std,n\ne,a,2,1,3\ne,b,0.5,0,3\n");
  CHECK(json.str().find("\"summary\"") != std::string::npos);

  std::ostringstream again;
  write_results_csv(again, res);
  CHECK(again.str() == csv.str());

  CHECK(format_number(-34.71234567) == "-34.7123");
  CHECK(format_number(1234567.0) == "1.23457e+06");
  CHECK(format_number(-0.0) == "0");
}

TEST_CASE("determinism across parallelism") {
  ExperimentConfig cfg = parse(kTwoAlgos);
  cfg.parallelism = 1;
  std::ostringstream a, b;
  write_results_csv(a, run_experiment(cfg));
  cfg.parallelism = 3;
  write_results_csv(b, run_experiment(cfg));
  CHECK(a.str() == b.str());
}

TEST_CASE("rendering") {
  NavMap m;
  m.rows = m.cols = 3;
  m.obstacle.assign(9, 0);
  m.targets = {{1, 2}, {3, 1}};
  const auto path = cells_from_moves({1, 1}, "RD");
  CHECK(render_ascii(m, path) ==
        "**.\n"
        ".*.\n"
        "E..\n");
  m.obstacle[8] = 1;
  CHECK(render_ascii(m, {}) == ".E.\n...\nE.#\n");
  const auto ppm = render_ppm(m, path, 4);
  const std::string header = "P6\n12 12\n255\n";
  CHECK(std::string(ppm.begin(), ppm.begin() + header.size()) == header);
  CHECK(ppm.size() == header.size() + 12 * 12 * 3);
  CHECK_THROWS_AS(render_ascii(m, {{4, 1}}), Error);
  CHECK_THROWS_AS(cells_from_moves({1, 1}, "RX"), Error);

  const GridWorld g = build_grid(3);
  const auto t = follow(g.mdp, submdp::test::path_policy(g, "RRDD"));
  const auto cells = trajectory_cells(g, t);
  CHECK(cells.size() == 5);
  CHECK(cells.back() == Cell{3, 3});
}
