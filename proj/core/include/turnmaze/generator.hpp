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
#include <cstdint>
#include <optional>
#include <vector>

#include "turnmaze/maze.hpp"
#include "turnmaze/rng.hpp"

namespace turnmaze {

inline constexpr int kDefaultTierCount = 6;

/// Difficulty subgroup k. The optimal path of a tier-k maze makes between
/// 2k-1 and 2k+1 turns.
struct DifficultyTier {
  int k = 1;

  constexpr int base() const noexcept { return 2 * k - 1; }
  constexpr int min_turns() const noexcept { return base(); }
  constexpr int max_turns() const noexcept { return base() + 2; }
  constexpr bool admits(std::size_t turns) const noexcept {
    return turns >= static_cast<std::size_t>(min_turns()) &&
           turns <= static_cast<std::size_t>(max_turns());
  }
};

struct GenConfig {
  DifficultyTier tier;
  int grid_side = 7;
  int dead_end_count = 1;
  int misleading_count = 0;
  std::uint64_t seed = 0;
  int max_attempts = 2000;

  /// Side m + 6, k dead ends, min(k - 1, 3) decoy destinations.
  static GenConfig defaults(int k, std::uint64_t seed);

  /// Throws ConfigError.
  void validate() const;
};

/// Seeded pipeline: carve, solve, accept on the tier's turn range (else
/// re-carve), inject dead ends and decoys, annotate, re-verify. Identical
/// configs give identical mazes. Throws BudgetExhaustedError when no carve in
/// `max_attempts` meets the turn range.
Maze generate(const GenConfig& cfg);

/// Perfect maze by randomized depth-first carving over the even-indexed
/// lattice cells; everything else starts as obstacle. Start and destination
/// are left unset.
Maze carve_lattice(int width, int height, Rng& rng);

/// Interior optimal-path cells where the direction changes, plus interior
/// optimal-path junctions (three or more passable neighbours), in path order.
std::vector<Coord> annotate_turnpoints(const Maze& maze);

/// Opens up to `count` leaf corridors (one to three cells) branching off the
/// optimal path. Leaves cannot shorten or reorder shortest paths, so the
/// optimal path is unchanged. When `stubs` is given, each opened corridor is
/// appended to it, base first.
Maze inject_dead_ends(const Maze& maze, int count, Rng& rng,
                      std::vector<std::vector<Coord>>* stubs = nullptr);

/// Marks up to `count` reachable cells off the optimal path as decoy
/// destinations, preferring dead-end tips.
Maze place_misleading(const Maze& maze, int count, Rng& rng);

/// Random obstacles (each cell blocked with probability percent/100) with a
/// random distinct start and destination. Returns nullopt when the
/// destination is unreachable; otherwise optimal_path is filled in. Small,
/// loopy mazes like these exercise tie-breaking and next-move sets.
std::optional<Maze> sample_open_field(int width, int height, int obstacle_percent,
                                      Rng& rng);

}  // namespace turnmaze
