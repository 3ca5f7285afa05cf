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
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "submdp/nav_map.hpp"
#include "test_util.hpp"

using namespace submdp;

namespace {

NavMap parse_map(const std::string& text) {
  std::istringstream in(text);
  return read_nav_map(in);
}

NavMap open_map(int n) {
  NavMap m;
  m.rows = m.cols = n;
  m.obstacle.assign(static_cast<std::size_t>(n * n), 0);
  return m;
}

}  // namespace

TEST_CASE("grid structure") {
  const GridWorld g = build_grid(4);
  for (StateId s = 0; s < g.mdp.num_states(); ++s) {
    const Cell c = g.cell(s);
    CHECK(g.mdp.level(s) == c.row + c.col - 1);
    CHECK(g.mdp.acting(s) == !(c.row == 4 && c.col == 4));
    CHECK((g.mdp.slot_of(s, kRight) != kNoSlot) == (c.col < 4 && g.mdp.acting(s)));
    CHECK((g.mdp.slot_of(s, kDown) != kNoSlot) == (c.row < 4 && g.mdp.acting(s)));
  }
  CHECK(follow(g.mdp, DeterministicPolicy::first_action(g.mdp)).elements.size() == 6);
}

TEST_CASE("synthetic generator") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (auto draw : {SparseDraw::kGridActions, SparseDraw::kLegalActions}) {
      const auto syn = build_synthetic({.n = 6, .d = 10, .t = 3, .seed = seed, .draw = draw});
      const auto& obj = *syn.objective;
      std::set<Element> replaced;
      for (const auto& [i, e] : syn.replacements) replaced.insert(e);
      if (draw == SparseDraw::kLegalActions && replaced.size() == syn.replacements.size()) {
        CHECK(syn.replacements.size() == 15);
      }
      CHECK(syn.replacements.size() <= 15);
      for (Element e = 0; e < obj.ground_size(); ++e) {
        const auto diag = obj.reward(e).diagonal();
        if (replaced.contains(e)) {
          CHECK(diag.sum() == 1.0);
          CHECK(diag.head(5).sum() == 0.0);
        } else {
          CHECK(diag.tail(5).sum() == 0.0);
          for (int i = 0; i < 5; ++i) {
            CHECK(diag(i) >= 0.0);
            CHECK(diag(i) <= 10.0);
            CHECK(diag(i) == std::floor(diag(i)));
          }
        }
      }
      // distinct states per sparse index
      for (int i = 5; i < 10; ++i) {
        std::set<StateId> states;
        std::size_t count = 0;
        for (const auto& [idx, e] : syn.replacements) {
          if (idx != i) continue;
          states.insert(syn.grid.mdp.state_of(e));
          ++count;
        }
        CHECK(states.size() == count);
      }
    }
  }
  const auto a = build_synthetic({.seed = 5}), b = build_synthetic({.seed = 5});
  for (Element e = 0; e < a.objective->ground_size(); ++e) CHECK(a.objective->reward(e) == b.objective->reward(e));
  CHECK_THROWS_AS(build_synthetic({.d = 5}), Error);
  CHECK_THROWS_AS(build_synthetic({.n = 2, .t = 5, .draw = SparseDraw::kLegalActions}), Error);
}

TEST_CASE("synthetic uniform entries are uniform on 0..10") {
  // chi-square, 10 degrees of freedom; 29.59 is the 0.001 critical value
  const GridWorld g = build_grid(10);
  const Element probe = g.mdp.element_for(*g.state_at({3, 4}), kRight);
  std::vector<double> counts(11, 0.0);
  int used = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto syn = build_synthetic({.n = 10, .seed = seed});
    const auto diag = syn.objective->reward(probe).diagonal();
    if (diag.tail(5).sum() > 0.0) continue;  // replaced this time
    counts[static_cast<std::size_t>(diag(0))] += 1.0;
    ++used;
  }
  double chi = 0.0;
  for (double c : counts) chi += (c - used / 11.0) * (c - used / 11.0) / (used / 11.0);
  CHECK(chi < 29.59);
}

TEST_CASE("visibility predicate") {
  NavMap m = open_map(7);
  m.obstacle[static_cast<std::size_t>(0 * 7 + 1)] = 1;  // (1,2)
  CHECK(visible(m, {1, 1}, {1, 2}));                   // adjacent obstacle
  CHECK_FALSE(visible(m, {1, 1}, {1, 4}));              // distance 3 is not < 3
  CHECK(visible(m, {4, 4}, {5, 5}));
  CHECK_FALSE(visible(m, {1, 1}, {1, 3}));              // line through (1,2)
  CHECK(visible(m, {2, 1}, {2, 3}));
  for (int r1 = 1; r1 <= 7; ++r1) {
    for (int c1 = 1; c1 <= 7; ++c1) {
      for (int r2 = 1; r2 <= 7; ++r2) {
        for (int c2 = 1; c2 <= 7; ++c2) {
          if (!m.navigable({r1, c1}) || !m.navigable({r2, c2})) continue;
          CHECK(visible(m, {r1, c1}, {r2, c2}) == visible(m, {r2, c2}, {r1, c1}));
        }
      }
    }
  }
  const auto line = supercover_line({1, 1}, {3, 3});
  CHECK(line.front() == Cell{1, 1});
  CHECK(line.back() == Cell{3, 3});
}

TEST_CASE("nav instances") {
  NavMap m = open_map(5);
  m.targets = {{1, 1}};
  const NavInstance inst = build_nav(m, 1e-5);
  for (Element e = 0; e < inst.grid.mdp.ground_size(); ++e) {
    const Cell c = inst.grid.cell(inst.grid.mdp.state_of(e));
    CHECK(inst.objective->reward(e)(0, 0) == (visible(m, c, {1, 1}) ? 1.0 : 0.0));
  }

  const NavMap corridor = parse_map(
      "....\n"
      "###.\n"
      "###.\n"
      "###.\n"
      "targets: (1,2) (4,4)\n");
  const NavInstance ci = build_nav(corridor, 1e-5);
  CHECK(count_paths(ci.grid.mdp, 10) == 1);
  CHECK(ci.objective->dim() == 2);

  // targets far outside the vision range of every reachable cell are unseen
  NavMap big = open_map(12);
  for (int r = 1; r <= 12; ++r) {
    for (int c = 1; c <= 12; ++c) big.obstacle[static_cast<std::size_t>((r - 1) * 12 + c - 1)] = !(r == 1 || c == 12);
  }
  big.obstacle[static_cast<std::size_t>(11 * 12 + 0)] = 0;  // (12,1), isolated
  big.targets = {{12, 1}};
  const NavInstance bi = build_nav(big, 1e-5);
  const auto t = follow(bi.grid.mdp, DeterministicPolicy::first_action(bi.grid.mdp));
  CHECK(bi.objective->evaluate(t.elements) == doctest::Approx(std::log(1e-5)));

  NavMap walled = open_map(4);
  walled.obstacle[static_cast<std::size_t>(3 * 4 + 2)] = 1;  // (4,3)
  walled.obstacle[static_cast<std::size_t>(2 * 4 + 3)] = 1;  // (3,4)
  walled.targets = {{1, 1}};
  CHECK_THROWS_WITH_AS(build_nav(walled, 1e-5), "goal unreachable under R/D moves", Error);
}

TEST_CASE("map text format and procedural maps") {
  const NavMap m = parse_map(
      "; comment\n"
      "S..\n"
      ".#E\n"
      "..X\n");
  CHECK(m.rows == 3);
  CHECK(m.start == Cell{1, 1});
  CHECK_FALSE(m.navigable({2, 2}));
  CHECK(m.targets.size() == 2);
  std::stringstream ss;
  write_nav_map(ss, m);
  const NavMap back = read_nav_map(ss);
  CHECK(back.obstacle == m.obstacle);
  CHECK(back.targets.size() == 2);

  const NavMap gen = generate_nav_map(21, 3);
  CHECK(gen.rows == 21);
  CHECK_NOTHROW(build_masked_grid(21, 21, {1, 1}, {21, 21}, gen.navigable_mask()));
  const auto targets = random_targets(gen, 10, 4);
  CHECK(targets.size() == 10);
  for (Cell c : targets) CHECK(gen.navigable(c));
  for (int i = 1; i <= 3; ++i) {
    std::ifstream in(std::string(SUBMDP_DATA_DIR) + "/maps/proc" + std::to_string(i) + ".map");
    REQUIRE(in);
    const NavMap shipped = read_nav_map(in);
    CHECK(shipped.rows == 21);
    CHECK(shipped.cols == 21);
  }
}

TEST_CASE("cardinality encoding") {
  const LeveledMdp mdp = build_cardinality_mdp(5, 3);
  CHECK(validate(mdp).empty());
  CHECK(mdp.ground_size() == 15);
  CHECK(count_paths(mdp, 1000) == 125);
  const CoverageObjective items = random_coverage(5, 9, 0.3, 2);
  const auto lifted = lift_item_coverage(mdp, items);
  // a path choosing items {0, 3, 3} has the item value of {0, 3}
  DeterministicPolicy p(mdp.num_states());
  StateId s = mdp.initial();
  const std::uint32_t picks[3] = {0, 3, 3};
  for (int h = 0; h < 3; ++h) {
    p.set_slot(s, picks[h]);
    s = *mdp.next_state(s, picks[h]);
  }
  CHECK(lifted->evaluate(follow(mdp, p).elements) == items.evaluate(std::vector<Element>{0, 3}));
  CHECK(best_k_subset(items, 2) == doctest::Approx(brute_force_plan(build_cardinality_mdp(5, 2), *lift_item_coverage(build_cardinality_mdp(5, 2), items)).value));
}
