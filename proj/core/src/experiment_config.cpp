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

#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "submdp/harness.hpp"

namespace submdp {

namespace pt = boost::property_tree;

namespace {

void check_keys(const pt::ptree& sec, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : sec) {
    if (!allowed.contains(key)) throw Error("unknown key '" + key + "' in [" + where + "]");
  }
}

template <class T>
T get_or(const pt::ptree& sec, const std::string& key, T fallback, const std::string& where) {
  const auto raw = sec.get_optional<std::string>(key);
  if (!raw) return fallback;
  std::istringstream is(*raw);
  T v{};
  if (!(is >> v) || !(is >> std::ws).eof()) {
    throw Error("bad value '" + *raw + "' for '" + key + "' in [" + where + "]");
  }
  return v;
}

bool get_bool(const pt::ptree& sec, const std::string& key, bool fallback, const std::string& where) {
  const auto raw = sec.get_optional<std::string>(key);
  if (!raw) return fallback;
  if (*raw == "true" || *raw == "1" || *raw == "on" || *raw == "yes") return true;
  if (*raw == "false" || *raw == "0" || *raw == "off" || *raw == "no") return false;
  throw Error("bad boolean '" + *raw + "' for '" + key + "' in [" + where + "]");
}

std::string get_str(const pt::ptree& sec, const std::string& key, const std::string& fallback) {
  return sec.get<std::string>(key, fallback);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return {};
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

EnvSpec parse_env(const std::string& id, const pt::ptree& sec, const std::filesystem::path& base) {
  const std::string where = "environment " + id;
  check_keys(sec, where, {"kind", "n", "t", "d", "lambda", "map", "targets", "items", "k",
                          "universe", "density", "objective", "normalize"});
  EnvSpec env;
  env.id = id;
  const auto kind = get_str(sec, "kind", "synthetic");
  if (kind == "synthetic") {
    env.kind = EnvKind::kSynthetic;
  } else if (kind == "nav") {
    env.kind = EnvKind::kNav;
  } else if (kind == "cardinality") {
    env.kind = EnvKind::kCardinality;
  } else {
    throw Error("unknown environment kind '" + kind + "'");
  }
  env.n = get_or(sec, "n", env.n, where);
  env.t = get_or(sec, "t", env.t, where);
  env.d = get_or(sec, "d", env.d, where);
  env.lambda = get_or(sec, "lambda", env.lambda, where);
  env.items = get_or(sec, "items", env.items, where);
  env.k = get_or(sec, "k", env.k, where);
  env.universe = get_or(sec, "universe", env.universe, where);
  env.density = get_or(sec, "density", env.density, where);
  env.normalize = get_bool(sec, "normalize", env.normalize, where);
  env.objective_path = resolve(base, get_str(sec, "objective", ""));
  if (env.kind == EnvKind::kNav) {
    env.map_path = resolve(base, get_str(sec, "map", ""));
    if (env.map_path.empty()) throw Error("[" + where + "] needs a map");
    std::ifstream in(env.map_path);
    if (!in) throw Error("cannot read map " + env.map_path.string());
    env.map = read_nav_map(in);
    const auto targets = get_str(sec, "targets", env.map->targets.empty() ? "random" : "file");
    if (targets != "random" && targets != "file") throw Error("targets must be 'file' or 'random'");
    env.random_targets = targets == "random";
    if (!env.random_targets && env.map->targets.empty()) throw Error("map " + env.map_path.string() + " has no targets");
  }
  return env;
}

AlgoSpec parse_algo(const std::string& id, const pt::ptree& sec) {
  const std::string where = "algorithm " + id;
  check_keys(sec, where, {"type", "delta", "samples", "rounding", "restarts", "round_samples",
                          "eval_samples", "exact_gradient", "l"});
  AlgoSpec a;
  a.id = id;
  const auto type = get_str(sec, "type", "cg");
  if (type == "cg") {
    a.kind = AlgoKind::kCg;
  } else if (type == "dp") {
    a.kind = AlgoKind::kDp;
  } else if (type == "greedy") {
    a.kind = AlgoKind::kGreedy;
  } else if (type == "optimal") {
    a.kind = AlgoKind::kOptimal;
  } else {
    throw Error("unknown algorithm type '" + type + "'");
  }
  a.delta = get_or(sec, "delta", a.delta, where);
  a.samples = get_or(sec, "samples", a.samples, where);
  a.restarts = get_or(sec, "restarts", a.restarts, where);
  a.round_samples = get_or(sec, "round_samples", a.round_samples, where);
  a.eval_samples = get_or(sec, "eval_samples", a.eval_samples, where);
  a.exact_gradient = get_bool(sec, "exact_gradient", a.exact_gradient, where);
  a.l = get_or(sec, "l", a.l, where);
  const auto rounding = get_str(sec, "rounding", "none");
  if (rounding == "none") {
    a.rounding = Rounding::kNone;
  } else if (rounding == "high") {
    a.rounding = Rounding::kHigh;
  } else if (rounding == "sub") {
    a.rounding = Rounding::kSub;
  } else {
    throw Error("unknown rounding '" + rounding + "'");
  }
  if (a.l == 0) throw Error("[" + where + "] l must be >= 1");
  if (a.restarts == 0) throw Error("[" + where + "] restarts must be >= 1");
  return a;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(std::string("config parse error: ") + e.what());
  }
  ExperimentConfig cfg;
  std::set<std::string> env_ids, algo_ids;
  for (const auto& [name, sec] : tree) {
    std::istringstream ns(name);
    std::string head, id, extra;
    ns >> head >> id >> extra;
    if (!extra.empty()) throw Error("bad section name [" + name + "]");
    if (head == "experiment" && id.empty()) {
      check_keys(sec, "experiment", {"name", "repetitions", "seed", "parallelism", "timing",
                                     "output", "summary", "json"});
      cfg.name = get_str(sec, "name", cfg.name);
      cfg.repetitions = get_or(sec, "repetitions", cfg.repetitions, "experiment");
      cfg.seed = get_or(sec, "seed", cfg.seed, "experiment");
      cfg.parallelism = get_or(sec, "parallelism", cfg.parallelism, "experiment");
      cfg.timing = get_bool(sec, "timing", cfg.timing, "experiment");
      cfg.output_csv = resolve(base_dir, get_str(sec, "output", ""));
      cfg.summary_csv = resolve(base_dir, get_str(sec, "summary", ""));
      cfg.json = resolve(base_dir, get_str(sec, "json", ""));
    } else if (head == "environment" && !id.empty()) {
      if (!env_ids.insert(id).second) throw Error("duplicate environment '" + id + "'");
      cfg.envs.push_back(parse_env(id, sec, base_dir));
    } else if (head == "algorithm" && !id.empty()) {
      if (!algo_ids.insert(id).second) throw Error("duplicate algorithm '" + id + "'");
      cfg.algos.push_back(parse_algo(id, sec));
    } else {
      throw Error("unknown section [" + name + "]");
    }
  }
  if (cfg.repetitions == 0) throw Error("repetitions must be >= 1");
  if (cfg.envs.empty()) throw Error("config declares no [environment <id>] section");
  if (cfg.algos.empty()) throw Error("config declares no [algorithm <id>] section");
  if (cfg.parallelism == 0) cfg.parallelism = 1;
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config " + path.string());
  return parse_experiment_config(in, path.parent_path());
}

}  // namespace submdp
