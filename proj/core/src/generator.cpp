// Copyright 2026 The turnmaze Authors
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

#include "turnmaze/generator.hpp"

#include <algorithm>
#include <deque>

#include "turnmaze/errors.hpp"
#include "turnmaze/solver.hpp"

namespace turnmaze {

GenConfig GenConfig::defaults(int k, std::uint64_t seed) {
  GenConfig cfg;
  cfg.tier = DifficultyTier{k};
  cfg.grid_side = cfg.tier.base() + 6;
  cfg.dead_end_count = k;
  cfg.misleading_count = std::min(k - 1, 3);
  cfg.seed = seed;
  return cfg;
}

void GenConfig::validate() const {
  if (tier.k < 1) throw ConfigError("tier must be >= 1");
  if (grid_side < tier.base() + 4)
    throw ConfigError("grid side " + std::to_string(grid_side) + " below minimum " +
                      std::to_string(tier.base() + 4) + " for tier " +
                      std::to_string(tier.k));
  if (grid_side > 1024) throw ConfigError("grid side above 1024");
  if (max_attempts < 1) throw ConfigError("max_attempts must be >= 1");
  if (dead_end_count < 0 || misleading_count < 0)
    throw ConfigError("dead-end and decoy counts must be non-negative");
}

Maze carve_lattice(int width, int height, Rng& rng) {
  Maze m(width, height);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) m.set_obstacle({r, c}, true);

  const int rows = (height + 1) / 2;
  const int cols = (width + 1) / 2;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(rows * cols), 0);
  auto lattice = [&](int lr, int lc) { return static_cast<std::size_t>(lr * cols + lc); };

  const int r0 = static_cast<int>(rng.below(static_cast<std::size_t>(rows)));
  const int c0 = static_cast<int>(rng.below(static_cast<std::size_t>(cols)));
  std::vector<std::pair<int, int>> stack{{r0, c0}};
  seen[lattice(r0, c0)] = 1;
  m.set_obstacle({2 * r0, 2 * c0}, false);

  std::array<Direction, 4> order = kSearchOrder;
  while (!stack.empty()) {
    const auto [lr, lc] = stack.back();
    rng.shuffle(std::span<Direction>(order));
    bool advanced = false;
    for (Direction d : order) {
      const Coord n = Coord{lr, lc}.step(d);
      if (n.row < 0 || n.col < 0 || n.row >= rows || n.col >= cols) continue;
      if (seen[lattice(n.row, n.col)]) continue;
      seen[lattice(n.row, n.col)] = 1;
      m.set_obstacle({lr + n.row, lc + n.col}, false);  // wall between the two
      m.set_obstacle({2 * n.row, 2 * n.col}, false);
      stack.emplace_back(n.row, n.col);
      advanced = true;
      break;
    }
    if (!advanced) stack.pop_back();
  }
  return m;
}

namespace {

// Turn count of the (unique, in a perfect maze) path from `from` to every
// cell, or -1 where unreachable.
std::vector<int> turns_from(const Maze& m, Coord from) {
  std::vector<int> turns(m.area(), -1);
  std::vector<int> heading(m.area(), -1);
  std::deque<Coord> queue{from};
  turns[m.index(from)] = 0;
  while (!queue.empty()) {
    const Coord at = queue.front();
    queue.pop_front();
    for (Direction d : kSearchOrder) {
      const Coord n = at.step(d);
      if (!m.passable(n) || turns[m.index(n)] != -1) continue;
      const int prev = heading[m.index(at)];
      turns[m.index(n)] =
          turns[m.index(at)] + (prev >= 0 && prev != static_cast<int>(d) ? 1 : 0);
      heading[m.index(n)] = static_cast<int>(d);
      queue.push_back(n);
    }
  }
  return turns;
}

std::vector<Coord> lattice_cells(const Maze& m) {
  std::vector<Coord> out;
  for (int r = 0; r < m.height(); r += 2)
    for (int c = 0; c < m.width(); c += 2)
      if (m.passable({r, c})) out.push_back({r, c});
  return out;
}

}  // namespace

Maze generate(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    Maze m = carve_lattice(cfg.grid_side, cfg.grid_side, rng);
    const std::vector<Coord> rooms = lattice_cells(m);
    m.start = rooms[rng.below(rooms.size())];

    // The carve is a tree, so the start fixes the path (and its turn count)
    // to every room. Keep the rooms whose path lands in the tier's range.
    const std::vector<int> turns = turns_from(m, m.start);
    std::vector<Coord> candidates;
    for (Coord c : rooms)
      if (c != m.start && cfg.tier.admits(static_cast<std::size_t>(turns[m.index(c)])))
        candidates.push_back(c);
    if (candidates.empty()) continue;
    m.destination = candidates[rng.below(candidates.size())];

    m.optimal_path = shortest_path(m).path;
    if (!cfg.tier.admits(count_turns(m.optimal_path))) continue;

    m = inject_dead_ends(m, cfg.dead_end_count, rng);
    m = place_misleading(m, cfg.misleading_count, rng);
    m.turn_points = annotate_turnpoints(m);
    m.tier = cfg.tier.k;
    m.seed = cfg.seed;

    if (shortest_path(m).path != m.optimal_path)
      throw Error("internal: decoration changed the optimal path");
    if (const auto problems = validate_maze(m); !problems.empty())
      throw Error("internal: generated maze invalid: " + problems.front());
    return m;
  }
  throw BudgetExhaustedError("no tier-" + std::to_string(cfg.tier.k) + " maze on a " +
                             std::to_string(cfg.grid_side) + "x" +
                             std::to_string(cfg.grid_side) + " grid within " +
                             std::to_string(cfg.max_attempts) + " attempts");
}

std::vector<Coord> annotate_turnpoints(const Maze& maze) {
  std::vector<Coord> out;
  const std::vector<Coord> cells = walk(maze, maze.start, maze.optimal_path);
  const Trajectory& path = maze.optimal_path;
  for (std::size_t i = 1; i + 1 < cells.size() && i < path.size(); ++i) {
    const Coord c = cells[i];
    if (is_turn(path[i - 1], path[i]) || maze.passable_neighbours(c) >= 3)
      out.push_back(c);
  }
  return out;
}

Maze inject_dead_ends(const Maze& maze, int count, Rng& rng,
                      std::vector<std::vector<Coord>>* stubs) {
  Maze m = maze;
  if (count <= 0) return m;
  std::vector<Coord> path_cells = walk(m, m.start, m.optimal_path);
  path_cells.pop_back();  // never branch off the destination

  auto is_leaf_site = [&](Coord c) {
    return m.in_bounds(c) && m.is_obstacle(c) && m.passable_neighbours(c) == 1 &&
           c != m.destination;
  };

  for (int opened = 0; opened < count; ++opened) {
    std::vector<Coord> sites;
    for (Coord p : path_cells)
      for (Direction d : kSearchOrder)
        if (is_leaf_site(p.step(d))) sites.push_back(p.step(d));
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    if (sites.empty()) break;

    std::vector<Coord> stub{sites[rng.below(sites.size())]};
    m.set_obstacle(stub.back(), false);
    const int extra = static_cast<int>(rng.below(3));
    for (int i = 0; i < extra; ++i) {
      std::vector<Coord> next;
      for (Direction d : kSearchOrder)
        if (is_leaf_site(stub.back().step(d))) next.push_back(stub.back().step(d));
      if (next.empty()) break;
      stub.push_back(next[rng.below(next.size())]);
      m.set_obstacle(stub.back(), false);
    }
    if (stubs) stubs->push_back(std::move(stub));
  }
  return m;
}

Maze place_misleading(const Maze& maze, int count, Rng& rng) {
  Maze m = maze;
  if (count <= 0) return m;
  const std::vector<Coord> path_cells = walk(m, m.start, m.optimal_path);
  const std::vector<int> dist = distance_field(m, m.start);

  std::vector<Coord> tips;
  std::vector<Coord> others;
  for (int r = 0; r < m.height(); ++r)
    for (int c = 0; c < m.width(); ++c) {
      const Coord cell{r, c};
      if (dist[m.index(cell)] == kUnreachable) continue;
      if (std::find(path_cells.begin(), path_cells.end(), cell) != path_cells.end())
        continue;
      if (std::find(m.misleading.begin(), m.misleading.end(), cell) != m.misleading.end())
        continue;
      (m.passable_neighbours(cell) == 1 ? tips : others).push_back(cell);
    }

  for (int placed = 0; placed < count; ++placed) {
    std::vector<Coord>& pool = tips.empty() ? others : tips;
    if (pool.empty()) break;
    const std::size_t i = rng.below(pool.size());
    m.misleading.push_back(pool[i]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return m;
}

std::optional<Maze> sample_open_field(int width, int height, int obstacle_percent,
                                      Rng& rng) {
  Maze m(width, height);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      if (rng.chance(static_cast<std::uint64_t>(obstacle_percent), 100))
        m.set_obstacle({r, c}, true);
  const auto pick = [&] {
    return Coord{static_cast<int>(rng.below(static_cast<std::size_t>(height))),
                 static_cast<int>(rng.below(static_cast<std::size_t>(width)))};
  };
  m.start = pick();
  do {
    m.destination = pick();
  } while (m.destination == m.start && m.area() > 1);
  if (m.area() <= 1) return std::nullopt;
  m.set_obstacle(m.start, false);
  m.set_obstacle(m.destination, false);
  if (!reachable(m, m.start, m.destination)) return std::nullopt;
  m.optimal_path = shortest_path(m).path;
  return m;
}

}  // namespace turnmaze
