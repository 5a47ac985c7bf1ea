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

#pragma once

#include <cstddef>
#include <vector>

#include "turnmaze/maze.hpp"

namespace turnmaze {

struct PathSolution {
  Trajectory path;
  std::size_t length = 0;
  bool is_unique = true;
};

inline constexpr int kUnreachable = -1;

/// BFS distances (in moves) from `from` to every cell; kUnreachable for
/// obstacles and cells in other components. Indexed by Maze::index.
std::vector<int> distance_field(const Maze& maze, Coord from);

bool reachable(const Maze& maze, Coord from, Coord to);

/// Exact shortest start-to-destination path. Among equal-length paths the
/// lexicographically smallest move sequence under up < down < left < right
/// is returned, so the answer depends only on the grid.
/// Throws UnsolvableError if the destination is not reachable.
PathSolution shortest_path(const Maze& maze);

inline constexpr std::size_t kEnumerationMaxSteps = 20;
inline constexpr std::size_t kEnumerationMaxArea = 64;

/// Brute-force test oracle: every simple start-to-destination path with at
/// most `max_len` moves, in depth-first order (up, down, left, right).
/// Throws GuardExceededError past 20 steps or 64 cells.
std::vector<Trajectory> enumerate_paths(const Maze& maze, std::size_t max_len);

/// Directions d (in left, right, up, down order) such that prefix + [d] is
/// still the prefix of some shortest path. Empty once the prefix is a whole
/// shortest path. Throws OffOptimalPrefixError if the prefix is invalid or
/// already off every shortest path.
std::vector<Direction> optimal_next(const Maze& maze, const Trajectory& prefix);

/// Number of direction changes, reversals included.
std::size_t count_turns(const Trajectory& traj) noexcept;

}  // namespace turnmaze
