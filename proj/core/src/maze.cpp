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

#include "turnmaze/maze.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "turnmaze/errors.hpp"

namespace turnmaze {

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::left:
      return "left";
    case Direction::right:
      return "right";
    case Direction::up:
      return "up";
    case Direction::down:
      return "down";
  }
  return "?";
}

std::optional<Direction> direction_from_word(std::string_view word) noexcept {
  while (!word.empty() && std::isspace(static_cast<unsigned char>(word.front())))
    word.remove_prefix(1);
  while (!word.empty() && std::isspace(static_cast<unsigned char>(word.back())))
    word.remove_suffix(1);
  if (word.size() > 5) return std::nullopt;
  std::string lower(word);
  for (char& ch : lower)
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (Direction d : kDirections)
    if (lower == to_string(d)) return d;
  return std::nullopt;
}

Direction opposite(Direction d) noexcept {
  switch (d) {
    case Direction::left:
      return Direction::right;
    case Direction::right:
      return Direction::left;
    case Direction::up:
      return Direction::down;
    case Direction::down:
      return Direction::up;
  }
  return d;
}

Coord Coord::step(Direction d) const noexcept {
  switch (d) {
    case Direction::left:
      return {row, col - 1};
    case Direction::right:
      return {row, col + 1};
    case Direction::up:
      return {row - 1, col};
    case Direction::down:
      return {row + 1, col};
  }
  return *this;
}

Maze::Maze(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0)
    throw ConfigError("maze dimensions must be positive");
  blocked_.assign(area(), 0);
}

void Maze::set_obstacle(Coord c, bool blocked) {
  if (!in_bounds(c)) throw ConfigError("obstacle out of bounds: " + to_string(c));
  blocked_[index(c)] = blocked ? 1 : 0;
}

std::vector<Coord> Maze::obstacles() const {
  std::vector<Coord> out;
  for (int r = 0; r < height_; ++r)
    for (int c = 0; c < width_; ++c)
      if (blocked_[index({r, c})]) out.push_back({r, c});
  return out;
}

int Maze::passable_neighbours(Coord c) const noexcept {
  int n = 0;
  for (Direction d : kSearchOrder)
    if (passable(c.step(d))) ++n;
  return n;
}

std::string maze_id(const Maze& maze) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "t%d-%016llx", maze.tier,
                static_cast<unsigned long long>(maze.seed));
  return buf;
}

std::string_view to_string(MoveStatus s) noexcept {
  switch (s) {
    case MoveStatus::ok:
      return "ok";
    case MoveStatus::boundary_exit:
      return "boundary-exit";
    case MoveStatus::obstacle_collision:
      return "obstacle-collision";
  }
  return "?";
}

std::string_view to_string(StepFailure f) noexcept {
  switch (f) {
    case StepFailure::none:
      return "none";
    case StepFailure::boundary_exit:
      return "boundary-exit";
    case StepFailure::obstacle_collision:
      return "obstacle-collision";
    case StepFailure::length_cap:
      return "length-cap";
  }
  return "?";
}

MoveResult apply_move(const Maze& maze, Coord at, Direction dir) noexcept {
  const Coord target = at.step(dir);
  if (!maze.in_bounds(target)) return {MoveStatus::boundary_exit, target};
  if (maze.is_obstacle(target)) return {MoveStatus::obstacle_collision, target};
  return {MoveStatus::ok, target};
}

ExecutionTrace execute(const Maze& maze, const Trajectory& traj) {
  ExecutionTrace trace;
  trace.positions.reserve(std::min(traj.size(), maze.max_trajectory_length()) + 1);
  trace.positions.push_back(maze.start);
  Coord at = maze.start;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (i >= maze.max_trajectory_length()) {
      trace.first_invalid = i;
      trace.failure = StepFailure::length_cap;
      return trace;
    }
    const MoveResult r = apply_move(maze, at, traj[i]);
    if (!r.ok()) {
      trace.first_invalid = i;
      trace.failure = r.status == MoveStatus::boundary_exit
                          ? StepFailure::boundary_exit
                          : StepFailure::obstacle_collision;
      return trace;
    }
    at = r.target;
    trace.positions.push_back(at);
  }
  trace.reached_destination = at == maze.destination;
  return trace;
}

std::vector<Coord> walk(const Maze& maze, Coord from, const Trajectory& traj) {
  std::vector<Coord> out{from};
  for (Direction d : traj) {
    const MoveResult r = apply_move(maze, out.back(), d);
    if (!r.ok()) break;
    out.push_back(r.target);
  }
  return out;
}

std::vector<std::string> validate_maze(const Maze& maze) {
  std::vector<std::string> problems;
  if (maze.width() <= 0 || maze.height() <= 0) {
    problems.push_back("empty grid");
    return problems;
  }
  auto check_cell = [&](Coord c, std::string_view what) {
    if (!maze.in_bounds(c))
      problems.push_back(std::string(what) + " out of bounds at " + to_string(c));
    else if (maze.is_obstacle(c))
      problems.push_back(std::string(what) + " on an obstacle at " + to_string(c));
  };
  check_cell(maze.start, "start");
  check_cell(maze.destination, "destination");
  for (Coord c : maze.misleading) check_cell(c, "misleading destination");
  for (Coord c : maze.turn_points) check_cell(c, "turn point");
  if (maze.start == maze.destination) problems.push_back("start equals destination");
  if (std::find(maze.misleading.begin(), maze.misleading.end(), maze.destination) !=
      maze.misleading.end())
    problems.push_back("destination listed as misleading");
  if (!problems.empty()) return problems;

  const ExecutionTrace trace = execute(maze, maze.optimal_path);
  if (!trace.fully_valid())
    problems.push_back("optimal path invalid at step " +
                       std::to_string(*trace.first_invalid));
  else if (!trace.reached_destination)
    problems.push_back("optimal path does not end at the destination");

  for (Coord tp : maze.turn_points) {
    const bool on_path = std::find(trace.positions.begin(), trace.positions.end(),
                                   tp) != trace.positions.end();
    if (!on_path && maze.passable_neighbours(tp) < 3)
      problems.push_back("turn point " + to_string(tp) +
                         " is neither on the path nor a junction");
  }
  return problems;
}

Maze open_maze(int width, int height, Coord start, Coord destination) {
  Maze m(width, height);
  m.start = start;
  m.destination = destination;
  return m;
}

std::string to_string(Coord c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

std::string to_string(const Trajectory& traj) {
  std::string out = "[";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (i) out += ", ";
    out += '"';
    out += to_string(traj[i]);
    out += '"';
  }
  out += ']';
  return out;
}

}  // namespace turnmaze
