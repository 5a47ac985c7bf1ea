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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace turnmaze {

enum class Direction : std::uint8_t { left, right, up, down };

/// Presentation order, also the A/B/C/D option order of next-step questions.
inline constexpr std::array<Direction, 4> kDirections = {
    Direction::left, Direction::right, Direction::up, Direction::down};

/// Neighbour expansion order used by every search; it fixes tie-breaking
/// among equal-length paths.
inline constexpr std::array<Direction, 4> kSearchOrder = {
    Direction::up, Direction::down, Direction::left, Direction::right};

std::string_view to_string(Direction d) noexcept;

/// Case-insensitive; surrounding whitespace is ignored.
std::optional<Direction> direction_from_word(std::string_view word) noexcept;

Direction opposite(Direction d) noexcept;

/// Row 0 is the top line of a rendered map; up decreases the row.
struct Coord {
  int row = 0;
  int col = 0;

  Coord step(Direction d) const noexcept;

  friend auto operator<=>(const Coord&, const Coord&) = default;
};

using Trajectory = std::vector<Direction>;

/// A reversal (up then down) is a turn.
constexpr bool is_turn(Direction prev, Direction next) noexcept {
  return prev != next;
}

/// Rectangular grid world. Everything except the obstacle bitmap is a plain
/// public member; a Maze is treated as immutable once handed to the scoring
/// and rendering code.
class Maze {
 public:
  Maze() = default;
  Maze(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t area() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  bool in_bounds(Coord c) const noexcept {
    return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_;
  }
  bool is_obstacle(Coord c) const noexcept {
    return in_bounds(c) && blocked_[index(c)] != 0;
  }
  bool passable(Coord c) const noexcept {
    return in_bounds(c) && blocked_[index(c)] == 0;
  }
  void set_obstacle(Coord c, bool blocked);

  /// Row-major order.
  std::vector<Coord> obstacles() const;
  int passable_neighbours(Coord c) const noexcept;

  /// Hard cap on executable trajectory length (4 * width * height).
  std::size_t max_trajectory_length() const noexcept { return 4 * area(); }

  std::size_t index(Coord c) const noexcept {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }

  Coord start;
  Coord destination;
  std::vector<Coord> misleading;
  std::vector<Coord> turn_points;
  Trajectory optimal_path;
  int tier = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const Maze&, const Maze&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> blocked_;
};

/// Stable identifier for a maze: tier and seed.
std::string maze_id(const Maze& maze);

enum class MoveStatus : std::uint8_t { ok, boundary_exit, obstacle_collision };

std::string_view to_string(MoveStatus s) noexcept;

struct MoveResult {
  MoveStatus status = MoveStatus::ok;
  /// The cell the move targets. For invalid moves this is the offending cell
  /// (possibly out of bounds).
  Coord target;

  bool ok() const noexcept { return status == MoveStatus::ok; }
};

/// The transition function. `at` must be in-bounds and passable.
MoveResult apply_move(const Maze& maze, Coord at, Direction dir) noexcept;

enum class StepFailure : std::uint8_t {
  none,
  boundary_exit,
  obstacle_collision,
  length_cap
};

std::string_view to_string(StepFailure f) noexcept;

struct ExecutionTrace {
  std::vector<Coord> positions;
  std::optional<std::size_t> first_invalid;
  StepFailure failure = StepFailure::none;
  bool reached_destination = false;

  std::size_t valid_steps() const noexcept {
    return positions.empty() ? 0 : positions.size() - 1;
  }
  bool fully_valid() const noexcept { return !first_invalid.has_value(); }
  Coord end() const noexcept { return positions.back(); }
};

/// Runs `traj` from the start, halting at the first invalid move. The
/// destination counts as reached only if the trajectory is fully valid and
/// ends there.
ExecutionTrace execute(const Maze& maze, const Trajectory& traj);

/// Positions visited by `traj` from `from`, without validity checks beyond
/// stopping at the first invalid move.
std::vector<Coord> walk(const Maze& maze, Coord from, const Trajectory& traj);

/// Every broken structural invariant, as readable messages. Empty means valid.
std::vector<std::string> validate_maze(const Maze& maze);

/// An obstacle-free maze; used heavily by tests and examples.
Maze open_maze(int width, int height, Coord start, Coord destination);

std::string to_string(Coord c);
std::string to_string(const Trajectory& traj);

}  // namespace turnmaze
