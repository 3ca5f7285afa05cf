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

// submdp command-line driver: plan, bench, render, validate.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "submdp/harness.hpp"
#include "submdp/mdp.hpp"
#include "submdp/nav_map.hpp"
#include "submdp/render.hpp"
#include "submdp/rng.hpp"

using namespace submdp;

namespace {

constexpr int kUsage = 1;
constexpr int kRuntime = 2;

std::string moves_of(const std::vector<Cell>& cells) {
  std::string m;
  for (std::size_t i = 1; i < cells.size(); ++i) m += cells[i].col > cells[i - 1].col ? 'R' : 'D';
  return m;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_image(const std::string& path, const NavMap& map, const std::vector<Cell>& cells, int scale) {
  const bool ppm = path.size() > 4 && path.ends_with(".ppm");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  if (ppm) {
    const auto bytes = render_ppm(map, cells, scale);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  } else {
    out << render_ascii(map, cells);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Submodular planning on leveled MDPs"};
  app.require_subcommand(1);

  // plan
  auto* plan = app.add_subcommand("plan", "Run one algorithm on one instance");
  EnvSpec env;
  AlgoSpec algo;
  std::string env_kind = "synthetic", algo_kind = "cg", rounding = "high", map_path, render_out;
  std::uint64_t seed = 0;
  int scale = 8;
  plan->add_option("--env", env_kind, "synthetic | nav | cardinality")
      ->check(CLI::IsMember({"synthetic", "nav", "cardinality"}));
  plan->add_option("-n", env.n, "grid side");
  plan->add_option("-t", env.t, "sparse replacements per index");
  plan->add_option("-d", env.d, "feature dimension / nav target count");
  plan->add_option("--lambda", env.lambda, "log-det regularizer");
  plan->add_option("--map", map_path, "nav map file")->check(CLI::ExistingFile);
  plan->add_flag("--random-targets", env.random_targets, "place d random targets on the map");
  plan->add_option("--items", env.items, "cardinality: number of items");
  plan->add_option("-k", env.k, "cardinality: budget");
  plan->add_option("--universe", env.universe, "cardinality: coverage universe size");
  plan->add_option("--density", env.density, "cardinality: coverage density");
  plan->add_option("--objective", env.objective_path, "cardinality: item objective file");
  plan->add_option("--algo", algo_kind, "cg | dp | greedy | optimal")
      ->check(CLI::IsMember({"cg", "dp", "greedy", "optimal"}));
  plan->add_option("--delta", algo.delta, "continuous greedy step");
  plan->add_option("--samples", algo.samples, "gradient samples per iteration");
  plan->add_option("--rounding", rounding, "none | high | sub")->check(CLI::IsMember({"none", "high", "sub"}));
  plan->add_option("--restarts", algo.restarts, "independent cg runs, best estimate kept");
  plan->add_option("--round-samples", algo.round_samples, "SUB comparison samples");
  plan->add_option("--eval-samples", algo.eval_samples, "samples for the mixture value");
  plan->add_flag("--exact-gradient", algo.exact_gradient, "closed-form gradient when the objective has one");
  plan->add_option("-l", algo.l, "macro-action length for dp/greedy");
  plan->add_option("--seed", seed, "master seed");
  plan->add_option("--render", render_out, "write the path (.ppm bitmap, else ascii)");
  plan->add_option("--scale", scale, "pixels per cell for .ppm")->check(CLI::PositiveNumber);

  // bench
  auto* bench = app.add_subcommand("bench", "Run an experiment config");
  std::string config_path;
  unsigned parallelism = 0;
  std::string out_csv, out_summary, out_json;
  bench->add_option("config", config_path, "experiment config (ini)")->required()->check(CLI::ExistingFile);
  bench->add_option("-j,--parallelism", parallelism, "override parallelism degree");
  bench->add_option("--output", out_csv, "override results CSV path");
  bench->add_option("--summary", out_summary, "override summary CSV path");
  bench->add_option("--json", out_json, "override JSON path");

  // render
  auto* render = app.add_subcommand("render", "Draw a path on a nav map");
  std::string render_map, moves, render_path;
  render->add_option("map", render_map)->required()->check(CLI::ExistingFile);
  render->add_option("--moves", moves, "R/D move string from the map start");
  render->add_option("-o,--out", render_path, "output (.ppm bitmap, else ascii); stdout if omitted");
  render->add_option("--scale", scale)->check(CLI::PositiveNumber);

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check an MDP or map file");
  std::string validate_mdp, validate_map, validate_obj;
  validate_cmd->add_option("--mdp", validate_mdp)->check(CLI::ExistingFile);
  validate_cmd->add_option("--map", validate_map)->check(CLI::ExistingFile);
  validate_cmd->add_option("--objective", validate_obj, "objective to check against --mdp")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*plan) {
      env.id = env_kind;
      env.kind = env_kind == "nav" ? EnvKind::kNav : env_kind == "cardinality" ? EnvKind::kCardinality : EnvKind::kSynthetic;
      if (env.kind == EnvKind::kNav) {
        if (map_path.empty()) {
          std::cerr << "plan --env nav needs --map\n";
          return kUsage;
        }
        std::ifstream in(map_path);
        env.map = read_nav_map(in);
        if (env.map->targets.empty()) env.random_targets = true;
      }
      algo.id = algo_kind;
      algo.kind = algo_kind == "dp" ? AlgoKind::kDp
                  : algo_kind == "greedy" ? AlgoKind::kGreedy
                  : algo_kind == "optimal" ? AlgoKind::kOptimal
                                           : AlgoKind::kCg;
      algo.rounding = rounding == "none" ? Rounding::kNone : rounding == "sub" ? Rounding::kSub : Rounding::kHigh;
      const std::uint64_t rs = repetition_seed(seed, 0);
      const Instance inst = build_instance(env, derive_seed(rs, {0, 0}));
      const AlgoOutcome res = run_algorithm(inst, algo, derive_seed(rs, {0, 1}));
      std::cout << "value " << format_number(res.value) << '\n';
      if (res.trajectory && inst.has_layout) {
        const auto cells = trajectory_cells(inst.grid, *res.trajectory);
        std::cout << "moves " << moves_of(cells) << '\n';
        if (!render_out.empty()) {
          NavMap canvas;
          if (inst.map) {
            canvas = *inst.map;
          } else {
            canvas.rows = inst.grid.rows;
            canvas.cols = inst.grid.cols;
            canvas.obstacle.assign(static_cast<std::size_t>(canvas.rows) * canvas.cols, 0);
          }
          write_image(render_out, canvas, cells, scale);
        }
      }
    } else if (*bench) {
      ExperimentConfig cfg = load_experiment_config(config_path);
      if (parallelism > 0) cfg.parallelism = parallelism;
      if (!out_csv.empty()) cfg.output_csv = out_csv;
      if (!out_summary.empty()) cfg.summary_csv = out_summary;
      if (!out_json.empty()) cfg.json = out_json;
      const ExperimentResults res = run_experiment(cfg);
      emit_results(cfg, res);
      write_summary_csv(std::cout, res);
      std::size_t errors = 0;
      for (const auto& r : res.rows) {
        if (r.error) {
          ++errors;
          std::cerr << r.env << '/' << r.algorithm << " rep " << r.repetition << ": " << *r.error << '\n';
        }
      }
      if (errors > 0) std::cerr << errors << " cell(s) failed\n";
    } else if (*render) {
      std::ifstream in(render_map);
      const NavMap map = read_nav_map(in);
      const auto cells = cells_from_moves(map.start, moves);
      if (render_path.empty()) {
        std::cout << render_ascii(map, cells);
      } else {
        write_image(render_path, map, cells, scale);
      }
    } else if (*validate_cmd) {
      if (validate_mdp.empty() && validate_map.empty()) {
        std::cerr << "validate needs --mdp or --map\n";
        return kUsage;
      }
      bool ok = true;
      if (!validate_mdp.empty()) {
        std::istringstream in(read_text(validate_mdp));
        const LeveledMdp mdp = read_mdp(in);
        const auto violations = validate(mdp);
        for (const auto& v : violations) std::cout << describe(mdp, v) << '\n';
        ok = ok && violations.empty();
        if (!validate_obj.empty()) {
          std::ifstream oin(validate_obj);
          const ObjectivePtr obj = read_objective(oin, mdp.ground_size());
          std::cout << "objective " << obj->kind() << " over " << obj->ground_size() << " pairs\n";
        }
        std::cout << validate_mdp << ": " << mdp.num_states() << " states, " << mdp.ground_size() << " pairs, "
                  << (violations.empty() ? "ok" : "INVALID") << '\n';
      }
      if (!validate_map.empty()) {
        std::ifstream in(validate_map);
        const NavMap map = read_nav_map(in);
        // throws when the goal is unreachable
        const GridWorld grid = build_masked_grid(map.rows, map.cols, map.start, map.goal(), map.navigable_mask());
        if (!map.targets.empty()) build_nav(map, 1e-5);
        std::cout << validate_map << ": " << map.rows << 'x' << map.cols << ", " << map.targets.size()
                  << " targets, " << grid.mdp.num_states() << " reachable cells, ok\n";
      }
      return ok ? 0 : kRuntime;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return 0;
}
