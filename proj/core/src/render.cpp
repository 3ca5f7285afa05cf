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

#include <array>
#include <string>

#include "submdp/render.hpp"

namespace submdp {

std::vector<Cell> trajectory_cells(const GridWorld& grid, const Trajectory& traj) {
  std::vector<Cell> cells;
  cells.reserve(traj.steps.size() + 1);
  for (const auto& step : traj.steps) cells.push_back(grid.cell(step.state));
  if (traj.steps.empty() || grid.cell(traj.final_state) != cells.back()) cells.push_back(grid.cell(traj.final_state));
  return cells;
}

std::vector<Cell> cells_from_moves(Cell start, std::string_view moves) {
  std::vector<Cell> cells{start};
  for (char m : moves) {
    Cell c = cells.back();
    if (m == 'R' || m == 'r') {
      ++c.col;
    } else if (m == 'D' || m == 'd') {
      ++c.row;
    } else {
      throw Error(std::string("bad move '") + m + "'");
    }
    cells.push_back(c);
  }
  return cells;
}

namespace {

enum class Paint { kObstacle, kFree, kTarget, kPath };

std::vector<Paint> paint(const NavMap& map, const std::vector<Cell>& path) {
  std::vector<Paint> px(static_cast<std::size_t>(map.rows) * map.cols);
  auto at = [&](Cell c) -> Paint& { return px[static_cast<std::size_t>(c.row - 1) * map.cols + (c.col - 1)]; };
  for (int r = 1; r <= map.rows; ++r) {
    for (int c = 1; c <= map.cols; ++c) at({r, c}) = map.navigable({r, c}) ? Paint::kFree : Paint::kObstacle;
  }
  for (Cell t : map.targets) {
    if (map.in_bounds(t)) at(t) = Paint::kTarget;
  }
  for (Cell p : path) {
    if (!map.in_bounds(p)) {
      throw Error("trajectory cell (" + std::to_string(p.row) + "," + std::to_string(p.col) + ") outside map");
    }
    at(p) = Paint::kPath;
  }
  return px;
}

}  // namespace

std::string render_ascii(const NavMap& map, const std::vector<Cell>& path) {
  const auto px = paint(map, path);
  std::string out;
  out.reserve(px.size() + map.rows);
  for (int r = 0; r < map.rows; ++r) {
    for (int c = 0; c < map.cols; ++c) {
      switch (px[static_cast<std::size_t>(r) * map.cols + c]) {
        case Paint::kObstacle: out += '#'; break;
        case Paint::kFree: out += '.'; break;
        case Paint::kTarget: out += 'E'; break;
        case Paint::kPath: out += '*'; break;
      }
    }
    out += '\n';
  }
  return out;
}

std::vector<std::uint8_t> render_ppm(const NavMap& map, const std::vector<Cell>& path, int scale) {
  if (scale < 1) throw Error("scale must be >= 1");
  const auto px = paint(map, path);
  static constexpr std::array<std::array<std::uint8_t, 3>, 4> kColor{{
      {200, 30, 30},   // obstacle
      {40, 90, 220},   // navigable
      {255, 150, 0},   // target
      {30, 180, 60},   // path
  }};
  const int w = map.cols * scale, h = map.rows * scale;
  const std::string header = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + static_cast<std::size_t>(w) * h * 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto& rgb = kColor[static_cast<int>(px[static_cast<std::size_t>(y / scale) * map.cols + x / scale])];
      out.insert(out.end(), rgb.begin(), rgb.end());
    }
  }
  return out;
}

}  // namespace submdp
