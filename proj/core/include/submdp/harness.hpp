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

#ifndef SUBMDP_HARNESS_HPP
#define SUBMDP_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "submdp/environments.hpp"
#include "submdp/nav_map.hpp"
#include "submdp/objective.hpp"

namespace submdp {

enum class EnvKind { kSynthetic, kNav, kCardinality };
enum class AlgoKind { kCg, kDp, kGreedy, kOptimal };
enum class Rounding { kNone, kHigh, kSub };

struct EnvSpec {
  std::string id;
  EnvKind kind = EnvKind::kSynthetic;
  // synthetic
  int n = 10;
  int t = 2;
  int d = 10;
  double lambda = 1e-5;
  // nav: targets from the map file, or `d` random navigable cells per repetition
  std::filesystem::path map_path;
  std::optional<NavMap> map;
  bool random_targets = false;
  // cardinality: coverage over `items` elements; random unless objective_path is set
  std::size_t items = 8;
  std::size_t k = 3;
  std::size_t universe = 12;
  double density = 0.25;
  std::filesystem::path objective_path;
  /// Report f - f(empty set) instead of raw f.
  bool normalize = false;
};

struct AlgoSpec {
  std::string id;
  AlgoKind kind = AlgoKind::kCg;
  double delta = 0.01;
  std::size_t samples = 10;
  Rounding rounding = Rounding::kNone;
  std::size_t restarts = 1;
  std::size_t round_samples = 100;
  std::size_t eval_samples = 100;
  bool exact_gradient = false;
  std::size_t l = 1;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::vector<EnvSpec> envs;
  std::vector<AlgoSpec> algos;
  std::size_t repetitions = 1;
  std::uint64_t seed = 0;
  unsigned parallelism = 1;
  bool timing = false;
  std::filesystem::path output_csv;
  std::filesystem::path summary_csv;
  std::filesystem::path json;
};

/// Parses the INI-style config (see README). Relative paths resolve against
/// `base_dir`. Throws Error on unknown keys or invalid values.
ExperimentConfig parse_experiment_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// A built environment instance.
struct Instance {
  GridWorld grid;  // layout; only the mdp is meaningful for cardinality
  ObjectivePtr objective;
  std::optional<NavMap> map;
  bool has_layout = false;
  /// Item-level function for cardinality instances.
  std::shared_ptr<const CoverageObjective> items;
};

Instance build_instance(const EnvSpec& env, std::uint64_t seed);

struct AlgoOutcome {
  double value = 0.0;
  std::optional<Trajectory> trajectory;
};

/// Runs one algorithm on an instance and returns the true objective of what
/// it outputs (exact mixture mean for unrounded continuous greedy).
AlgoOutcome run_algorithm(const Instance& inst, const AlgoSpec& algo, std::uint64_t seed);

struct ResultRow {
  std::string env;
  std::string algorithm;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
  double wall_ms = 0.0;
  std::optional<std::string> error;
};

struct SummaryRow {
  std::string env;
  std::string algorithm;
  double mean = 0.0;
  double std = 0.0;
  std::size_t n = 0;
};

struct ExperimentResults {
  std::vector<ResultRow> rows;
  std::vector<SummaryRow> summary;
};

/// Seed of repetition r: derived from (master seed, r) only.
std::uint64_t repetition_seed(std::uint64_t master, std::size_t repetition);

ExperimentResults run_experiment(const ExperimentConfig& cfg);

/// Mean and n-1 standard deviation per (env, algorithm), in row order.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

void write_results_csv(std::ostream& out, const ExperimentResults& results);
void write_summary_csv(std::ostream& out, const ExperimentResults& results);
void write_results_json(std::ostream& out, const ExperimentResults& results);
/// Writes whichever of the three outputs the config names.
void emit_results(const ExperimentConfig& cfg, const ExperimentResults& results);

/// %.6g
std::string format_number(double v);

}  // namespace submdp

#endif  // SUBMDP_HARNESS_HPP
