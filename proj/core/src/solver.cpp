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

#include "turnmaze/solver.hpp"

#include <deque>

#include "turnmaze/errors.hpp"

namespace turnmaze {

std::vector<int> distance_field(const Maze& maze, Coord from) {
  std::vector<int> dist(maze.area(), kUnreachable);
  if (!maze.passable(from)) return dist;
  std::deque<Coord> queue{from};
  dist[maze.index(from)] = 0;
  while (!queue.empty()) {
    const Coord at = queue.front();
    queue.pop_front();
    const int next = dist[maze.index(at)] + 1;
    for (Direction d : kSearchOrder) {
      const Coord n = at.step(d);
      if (!maze.passable(n) || dist[maze.index(n)] != kUnreachable) continue;
      dist[maze.index(n)] = next;
      queue.push_back(n);
    }
  }
  return dist;
}

bool reachable(const Maze& maze, Coord from, Coord to) {
  if (!maze.passable(to)) return false;
  return distance_field(maze, from)[maze.index(to)] != kUnreachable;
}

PathSolution shortest_path(const Maze& maze) {
  if (!maze.passable(maze.start) || !maze.passable(maze.destination))
    throw UnsolvableError("start or destination is not a passable cell");
  const std::vector<int> to_goal = distance_field(maze, maze.destination);
  const int total = to_goal[maze.index(maze.start)];
  if (total == kUnreachable)
    throw UnsolvableError("destination " + to_string(maze.destination) +
                          " is not reachable from " + to_string(maze.start));

  PathSolution sol;
  sol.length = static_cast<std::size_t>(total);
  sol.path.reserve(sol.length);

  // Greedy descent along the goal distance field, trying directions in
  // search order, gives the lexicographically smallest shortest path.
  Coord at = maze.start;
  while (at != maze.destination) {
    const int here = to_goal[maze.index(at)];
    for (Direction d : kSearchOrder) {
      const Coord n = at.step(d);
      if (maze.passable(n) && to_goal[maze.index(n)] == here - 1) {
        sol.path.push_back(d);
        at = n;
        break;
      }
    }
  }

  // Count shortest paths layer by layer, saturating at 2.
  std::vector<std::uint8_t> ways(maze.area(), 0);
  const std::vector<int> from_start = distance_field(maze, maze.start);
  std::vector<std::vector<Coord>> layers(sol.length + 1);
  for (int r = 0; r < maze.height(); ++r)
    for (int c = 0; c < maze.width(); ++c) {
      const Coord cell{r, c};
      const int ds = from_start[maze.index(cell)];
      const int dg = to_goal[maze.index(cell)];
      if (ds != kUnreachable && dg != kUnreachable && ds + dg == total)
        layers[static_cast<std::size_t>(ds)].push_back(cell);
    }
  ways[maze.index(maze.start)] = 1;
  for (std::size_t layer = 1; layer <= sol.length; ++layer)
    for (Coord cell : layers[layer]) {
      int sum = 0;
      for (Direction d : kSearchOrder) {
        const Coord p = cell.step(d);
        if (maze.passable(p) && from_start[maze.index(p)] == static_cast<int>(layer) - 1 &&
            to_goal[maze.index(p)] == total - static_cast<int>(layer) + 1)
          sum += ways[maze.index(p)];
      }
      ways[maze.index(cell)] = static_cast<std::uint8_t>(sum > 2 ? 2 : sum);
    }
  sol.is_unique = ways[maze.index(maze.destination)] == 1;
  return sol;
}

namespace {

void enumerate_from(const Maze& maze, Coord at, std::size_t max_len,
                    std::vector<std::uint8_t>& visited, Trajectory& moves,
                    std::vector<Trajectory>& out) {
  if (at == maze.destination) {
    out.push_back(moves);
    return;
  }
  if (moves.size() == max_len) return;
  for (Direction d : kSearchOrder) {
    const Coord n = at.step(d);
    if (!maze.passable(n) || visited[maze.index(n)]) continue;
    visited[maze.index(n)] = 1;
    moves.push_back(d);
    enumerate_from(maze, n, max_len, visited, moves, out);
    moves.pop_back();
    visited[maze.index(n)] = 0;
  }
}

}  // namespace

std::vector<Trajectory> enumerate_paths(const Maze& maze, std::size_t max_len) {
  if (max_len > kEnumerationMaxSteps)
    throw GuardExceededError("enumeration limited to " +
                             std::to_string(kEnumerationMaxSteps) + " steps");
  if (maze.area() > kEnumerationMaxArea)
    throw GuardExceededError("enumeration limited to mazes of " +
                             std::to_string(kEnumerationMaxArea) + " cells");
  std::vector<Trajectory> out;
  if (!maze.passable(maze.start) || !maze.passable(maze.destination)) return out;
  std::vector<std::uint8_t> visited(maze.area(), 0);
  visited[maze.index(maze.start)] = 1;
  Trajectory moves;
  enumerate_from(maze, maze.start, max_len, visited, moves, out);
  return out;
}

std::vector<Direction> optimal_next(const Maze& maze, const Trajectory& prefix) {
  const ExecutionTrace trace = execute(maze, prefix);
  if (!trace.fully_valid())
    throw OffOptimalPrefixError("prefix is not executable (step " +
                                std::to_string(*trace.first_invalid) + ")");
  const std::vector<int> to_goal = distance_field(maze, maze.destination);
  const int total = to_goal[maze.index(maze.start)];
  if (total == kUnreachable) throw UnsolvableError("maze has no solution");
  for (std::size_t i = 0; i < trace.positions.size(); ++i)
    if (to_goal[maze.index(trace.positions[i])] != total - static_cast<int>(i))
      throw OffOptimalPrefixError("prefix leaves every shortest path at step " +
                                  std::to_string(i == 0 ? 0 : i - 1));

  const Coord at = trace.end();
  const int here = to_goal[maze.index(at)];
  std::vector<Direction> out;
  if (here == 0) return out;
  for (Direction d : kDirections) {
    const Coord n = at.step(d);
    if (maze.passable(n) && to_goal[maze.index(n)] == here - 1) out.push_back(d);
  }
  return out;
}

std::size_t count_turns(const Trajectory& traj) noexcept {
  std::size_t turns = 0;
  for (std::size_t i = 1; i < traj.size(); ++i)
    if (is_turn(traj[i - 1], traj[i])) ++turns;
  return turns;
}

}  // namespace turnmaze
