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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "turnmaze/errors.hpp"
#include "turnmaze/generator.hpp"
#include "turnmaze/maze.hpp"
#include "turnmaze/maze_io.hpp"

namespace turnmaze {
namespace {

using D = Direction;

TEST(ApplyMove, UpDecreasesRow) {
  const Maze m = open_maze(5, 5, {0, 0}, {4, 4});
  const MoveResult r = apply_move(m, {2, 2}, D::up);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.target, (Coord{1, 2}));
}

TEST(ApplyMove, TopEdgeIsBoundaryExit) {
  const Maze m = open_maze(5, 5, {0, 0}, {4, 4});
  EXPECT_EQ(apply_move(m, {0, 0}, D::up).status, MoveStatus::boundary_exit);
}

TEST(ApplyMove, BlockedCellIsCollision) {
  Maze m = open_maze(5, 5, {0, 0}, {4, 4});
  m.set_obstacle({1, 2}, true);
  const MoveResult r = apply_move(m, {1, 1}, D::right);
  EXPECT_EQ(r.status, MoveStatus::obstacle_collision);
  EXPECT_EQ(r.target, (Coord{1, 2}));
}

TEST(Execute, ManhattanPath) {
  const Maze m = oracle::empty_grid(3, 3);
  const ExecutionTrace t = execute(m, {D::down, D::down, D::right, D::right});
  EXPECT_EQ(t.positions.size(), 5u);
  EXPECT_FALSE(t.first_invalid);
  EXPECT_TRUE(t.reached_destination);
  EXPECT_EQ(t.valid_steps(), 4u);
}

TEST(Execute, ImmediateBoundaryExit) {
  const Maze m = oracle::empty_grid(3, 3);
  const ExecutionTrace t = execute(m, {D::up});
  ASSERT_TRUE(t.first_invalid);
  EXPECT_EQ(*t.first_invalid, 0u);
  EXPECT_EQ(t.positions, (std::vector<Coord>{{0, 0}}));
  EXPECT_EQ(t.failure, StepFailure::boundary_exit);
  EXPECT_FALSE(t.reached_destination);
}

TEST(Execute, CollisionOnFirstStep) {
  Maze m = oracle::empty_grid(3, 3);
  m.set_obstacle({1, 0}, true);
  const ExecutionTrace t = execute(m, {D::down, D::down});
  ASSERT_TRUE(t.first_invalid);
  EXPECT_EQ(*t.first_invalid, 0u);
  EXPECT_EQ(t.failure, StepFailure::obstacle_collision);
}

TEST(Execute, PassingThroughDestinationDoesNotCount) {
  const Maze m = oracle::corridor(3);
  EXPECT_FALSE(execute(m, {D::right, D::right, D::left}).reached_destination);
  EXPECT_TRUE(execute(m, {D::right, D::right}).reached_destination);
}

TEST(Execute, LengthCap) {
  const Maze m = oracle::corridor(2);
  Trajectory t;
  for (std::size_t i = 0; i < m.max_trajectory_length() + 1; ++i)
    t.push_back(i % 2 ? D::left : D::right);
  const ExecutionTrace tr = execute(m, t);
  EXPECT_EQ(tr.failure, StepFailure::length_cap);
  EXPECT_FALSE(tr.reached_destination);
}

TEST(Execute, MatchesReferenceWalkOnRandomInput) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 400; ++trial) {
    const Maze m = oracle::solvable_field(gen, 5, 4, 25);
    const Trajectory t = oracle::random_moves(gen, gen() % 12);
    const ExecutionTrace got = execute(m, t);
    const oracle::Walk want = oracle::run(m, t);
    EXPECT_EQ(got.positions, want.cells);
    EXPECT_EQ(got.first_invalid, want.bad);
    EXPECT_EQ(got.reached_destination, want.arrived);
  }
}

TEST(IsTurn, Cases) {
  EXPECT_FALSE(is_turn(D::up, D::up));
  EXPECT_TRUE(is_turn(D::up, D::left));
  EXPECT_TRUE(is_turn(D::up, D::down));
}

TEST(Directions, WordsAndOpposites) {
  for (Direction d : kDirections) {
    EXPECT_EQ(direction_from_word(to_string(d)), d);
    EXPECT_EQ(opposite(opposite(d)), d);
    EXPECT_NE(opposite(d), d);
  }
  EXPECT_EQ(direction_from_word(" Right "), D::right);
  EXPECT_FALSE(direction_from_word("northeast"));
}

TEST(MazeIo, JsonRoundTrip) {
  const Maze m = generate(GenConfig::defaults(2, 99));
  const Maze back = maze_from_json(maze_to_json(m));
  EXPECT_EQ(back, m);
  EXPECT_EQ(maze_to_line(back), maze_to_line(m));
}

TEST(MazeIo, RejectsMalformedRecords) {
  EXPECT_THROW(maze_from_json(Json::parse(R"({"width": 3})")), FormatError);
  Json j = maze_to_json(oracle::corridor(3));
  j["start"] = Json::array({0, 7});
  EXPECT_THROW(maze_from_json(j), FormatError);
}

TEST(MazeIo, TrajectoryRoundTrip) {
  const Trajectory t{D::left, D::right, D::up, D::down};
  EXPECT_EQ(trajectory_from_json(trajectory_to_json(t)), t);
  EXPECT_EQ(to_string(t), R"(["left", "right", "up", "down"])");
  EXPECT_EQ(to_string(Coord{2, 3}), "(2,3)");
}

TEST(Validate, FlagsBlockedStart) {
  Maze m = oracle::corridor(3);
  m.optimal_path = {D::right, D::right};
  EXPECT_TRUE(validate_maze(m).empty());
  m.set_obstacle({0, 0}, true);
  EXPECT_FALSE(validate_maze(m).empty());
}

}  // namespace
}  // namespace turnmaze
