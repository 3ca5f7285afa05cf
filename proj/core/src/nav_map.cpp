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

#include "submdp/nav_map.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <regex>
#include <string>

#include "submdp/rng.hpp"

namespace submdp {

bool NavMap::navigable(Cell c) const {
  if (!in_bounds(c)) return false;
  return !obstacle[static_cast<std::size_t>((c.row - 1) * cols + (c.col - 1))];
}

std::vector<std::uint8_t> NavMap::navigable_mask() const {
  std::vector<std::uint8_t> out(obstacle.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = !obstacle[i];
  return out;
}

NavMap read_nav_map(std::istream& in) {
  NavMap map;
  std::vector<std::string> grid;
  std::string line;
  const std::regex coord(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == ';') continue;
    if (line.rfind("targets:", 0) == 0) {
      for (std::sregex_iterator it(line.begin(), line.end(), coord), end; it != end; ++it) {
        map.targets.push_back({std::stoi((*it)[1]), std::stoi((*it)[2])});
      }
      continue;
    }
    grid.push_back(line);
  }
  if (grid.empty()) throw Error("map has no rows");
  map.rows = static_cast<int>(grid.size());
  map.cols = static_cast<int>(grid.front().size());
  map.obstacle.assign(static_cast<std::size_t>(map.rows * map.cols), 0);
  bool start_seen = false;
  for (int r = 1; r <= map.rows; ++r) {
    const auto& row = grid[static_cast<std::size_t>(r - 1)];
    if (static_cast<int>(row.size()) != map.cols) {
      throw Error("map row " + std::to_string(r) + " has inconsistent width");
    }
    for (int c = 1; c <= map.cols; ++c) {
      const char ch = row[static_cast<std::size_t>(c - 1)];
      auto& obs = map.obstacle[static_cast<std::size_t>((r - 1) * map.cols + (c - 1))];
      switch (ch) {
        case '#': obs = 1; break;
        case '.': break;
        case 'E': map.targets.push_back({r, c}); break;
        case 'X': obs = 1; map.targets.push_back({r, c}); break;
        case 'S':
          if (start_seen) throw Error("map has more than one start");
          start_seen = true;
          map.start = {r, c};
          break;
        default:
          throw Error(std::string("unknown map character '") + ch + "'");
      }
    }
  }
  for (const auto& t : map.targets) {
    if (!map.in_bounds(t)) throw Error("target outside the map");
  }
  return map;
}

void write_nav_map(std::ostream& out, const NavMap& map) {
  std::vector<std::string> rows(static_cast<std::size_t>(map.rows), std::string(static_cast<std::size_t>(map.cols), '.'));
  for (int r = 1; r <= map.rows; ++r) {
    for (int c = 1; c <= map.cols; ++c) {
      if (!map.navigable({r, c})) rows[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)] = '#';
    }
  }
  for (const auto& t : map.targets) {
    auto& ch = rows[static_cast<std::size_t>(t.row - 1)][static_cast<std::size_t>(t.col - 1)];
    ch = ch == '#' ? 'X' : 'E';
  }
  if (map.start != Cell{1, 1}) rows[static_cast<std::size_t>(map.start.row - 1)][static_cast<std::size_t>(map.start.col - 1)] = 'S';
  for (const auto& r : rows) out << r << '\n';
}

std::vector<Cell> supercover_line(Cell from, Cell to) {
  std::vector<Cell> out{from};
  const int dr = to.row - from.row;
  const int dc = to.col - from.col;
  const int nr = std::abs(dr);
  const int nc = std::abs(dc);
  const int sr = dr > 0 ? 1 : -1;
  const int sc = dc > 0 ? 1 : -1;
  Cell p = from;
  int ir = 0;
  int ic = 0;
  while (ir < nr || ic < nc) {
    // Compare when the segment crosses the next horizontal vs vertical cell
    // boundary: (1 + 2 ir) / (2 nr) against (1 + 2 ic) / (2 nc).
    const long lhs = static_cast<long>(1 + 2 * ir) * nc;
    const long rhs = static_cast<long>(1 + 2 * ic) * nr;
    if (lhs == rhs) {
      // Exact corner: include both side cells.
      out.push_back({p.row + sr, p.col});
      out.push_back({p.row, p.col + sc});
      p.row += sr;
      p.col += sc;
      ++ir;
      ++ic;
    } else if (lhs < rhs) {
      p.row += sr;
      ++ir;
    } else {
      p.col += sc;
      ++ic;
    }
    out.push_back(p);
  }
  return out;
}

bool visible(const NavMap& map, Cell from, Cell to) {
  if (!map.in_bounds(from) || !map.in_bounds(to)) throw Error("visibility query outside the map");
  if (std::abs(from.row - to.row) + std::abs(from.col - to.col) == 1) return true;
  const double dist = std::hypot(from.row - to.row, from.col - to.col);
  if (!(dist < map.vision_range)) return false;
  for (const Cell& c : supercover_line(from, to)) {
    if (c == from) continue;
    if (!map.navigable(c)) return false;
  }
  return true;
}

NavInstance build_nav(const NavMap& map, double lambda) {
  if (map.targets.empty()) throw Error("navigation map has no targets");
  for (const auto& t : map.targets) {
    if (!map.in_bounds(t)) throw Error("target outside the map");
  }
  NavInstance inst;
  inst.grid = build_masked_grid(map.rows, map.cols, map.start, map.goal(), map.navigable_mask());
  const auto& mdp = inst.grid.mdp;
  const std::size_t d = map.targets.size();
  std::vector<std::vector<double>> diags(mdp.ground_size(), std::vector<double>(d, 0.0));
  for (Element e = 0; e < mdp.ground_size(); ++e) {
    const Cell from = inst.grid.cell(mdp.state_of(e));
    for (std::size_t i = 0; i < d; ++i) diags[e][i] = visible(map, from, map.targets[i]) ? 1.0 : 0.0;
  }
  inst.objective = std::make_shared<LogDetObjective>(LogDetObjective::diagonal(diags, lambda));
  return inst;
}

NavMap generate_nav_map(int n, std::uint64_t seed, double obstacle_fraction) {
  if (n < 2) throw Error("map size must be >= 2");
  for (std::uint64_t attempt = 0;; ++attempt) {
    CounterRng rng(seed, {attempt});
    NavMap map;
    map.rows = n;
    map.cols = n;
    map.obstacle.assign(static_cast<std::size_t>(n * n), 0);
    const auto target = static_cast<std::size_t>(obstacle_fraction * n * n);
    std::size_t filled = 0;
    for (int guard = 0; filled < target && guard < 10 * n * n; ++guard) {
      const int h = 1 + static_cast<int>(rng.below(4));
      const int w = 1 + static_cast<int>(rng.below(4));
      const int r0 = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      const int c0 = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      for (int r = r0; r < r0 + h && r <= n; ++r) {
        for (int c = c0; c < c0 + w && c <= n; ++c) {
          auto& cell = map.obstacle[static_cast<std::size_t>((r - 1) * n + (c - 1))];
          if ((r == 1 && c == 1) || (r == n && c == n) || cell) continue;
          cell = 1;
          ++filled;
        }
      }
    }
    try {
      build_masked_grid(n, n, {1, 1}, {n, n}, map.navigable_mask());
      return map;
    } catch (const Error&) {
      // Blocked; redraw.
    }
  }
}

std::vector<Cell> random_targets(const NavMap& map, std::size_t count, std::uint64_t seed) {
  std::vector<Cell> pool;
  for (int r = 1; r <= map.rows; ++r) {
    for (int c = 1; c <= map.cols; ++c) {
      if (map.navigable({r, c})) pool.push_back({r, c});
    }
  }
  if (count > pool.size()) throw Error("not enough navigable cells for targets");
  CounterRng rng(seed);
  for (std::size_t j = 0; j < count; ++j) {
    std::swap(pool[j], pool[j + rng.below(pool.size() - j)]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace submdp
