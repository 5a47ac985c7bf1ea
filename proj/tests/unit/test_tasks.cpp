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

#include <fstream>
#include <map>
#include <sstream>

#include "oracles.hpp"
#include "turnmaze/errors.hpp"
#include "turnmaze/generator.hpp"
#include "turnmaze/maze_io.hpp"
#include "turnmaze/solver.hpp"
#include "turnmaze/tasks.hpp"

namespace turnmaze {
namespace {

using D = Direction;

Maze with_path(Maze m) {
  m.optimal_path = shortest_path(m).path;
  m.turn_points = annotate_turnpoints(m);
  return m;
}

Maze l_maze() {
  Maze m(3, 3);
  for (Coord c : {Coord{0, 1}, Coord{0, 2}, Coord{1, 1}, Coord{1, 2}}) m.set_obstacle(c, true);
  m.start = {0, 0};
  m.destination = {2, 2};
  return with_path(m);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(RoutePlanning, EmptyGridKeyLength) {
  const TaskInstance inst = build_route_planning(with_path(oracle::empty_grid(3, 3)));
  const Trajectory key = route_answer(inst);
  EXPECT_EQ(key.size(), 4u);
  EXPECT_TRUE(oracle::run(inst.maze, key).arrived);
}

TEST(RoutePlanning, KeyLengthIsEnumerationMinimum) {
  std::mt19937_64 gen(21);
  for (int i = 0; i < 20; ++i) {
    const Maze m = with_path(oracle::solvable_field(gen, 6, 6, 35));
    const TaskInstance inst = build_route_planning(m);
    std::size_t best = SIZE_MAX;
    const auto len = static_cast<std::size_t>(oracle::shortest_len(m));
    if (len > kEnumerationMaxSteps) continue;
    for (const Trajectory& p : oracle::all_paths(m, len)) best = std::min(best, p.size());
    EXPECT_EQ(route_answer(inst).size(), best);
  }
}

TEST(NextStep, ForcedCorridor) {
  const auto inst = build_next_step(with_path(oracle::corridor(4)), 1);
  ASSERT_TRUE(inst);
  EXPECT_EQ(inst->answer_key, "B");
  EXPECT_EQ(answer_letter(*inst), 'B');
  EXPECT_EQ(option_letter(D::right), 'B');
}

TEST(NextStep, AmbiguousPrefixIsSkipped) {
  EXPECT_FALSE(build_next_step(with_path(oracle::empty_grid(3, 3)), 1));
}

TEST(NextStep, PrefixOutOfRangeThrows) {
  const Maze m = with_path(oracle::corridor(4));
  EXPECT_THROW(build_next_step(m, 0), ConfigError);
  EXPECT_THROW(build_next_step(m, 3), ConfigError);
}

TEST(NextStep, UniquePathAnswerIsNextMove) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Maze m = generate(GenConfig::defaults(2, s));
    for (std::size_t k = 1; k < m.optimal_path.size(); ++k) {
      const auto inst = build_next_step(m, k);
      ASSERT_TRUE(inst);
      EXPECT_EQ(option_direction(answer_letter(*inst)), m.optimal_path[k]);
      EXPECT_EQ(next_step_prefix(*inst).size(), k);
    }
  }
}

TEST(Turnpoint, StraightCorridorCountsZero) {
  Rng rng(1);
  const TaskInstance inst =
      build_turnpoint_qa(with_path(oracle::corridor(5)), rng, {TurnpointTemplate::turn_count, {}, {}});
  EXPECT_EQ(inst.payload["value"], 0);
  EXPECT_EQ(inst.payload["options"][inst.answer_key.get<std::string>()], "0");
}

TEST(Turnpoint, CornerIsATurnPoint) {
  Rng rng(1);
  const TaskInstance inst =
      build_turnpoint_qa(l_maze(), rng, {TurnpointTemplate::is_turn_point, {}, Coord{2, 0}});
  EXPECT_EQ(inst.payload["value"], true);
  EXPECT_EQ(instance_options(inst).at(static_cast<std::size_t>(answer_letter(inst) - 'A')).second,
            "yes");
}

TEST(Turnpoint, CountMatchesDirectionChanges) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Maze m = generate(GenConfig::defaults(3, s));
    Rng rng(s);
    const TaskInstance inst = build_turnpoint_qa(m, rng, {TurnpointTemplate::turn_count, {}, {}});
    EXPECT_EQ(inst.payload["value"].get<std::size_t>(), oracle::turns(m.optimal_path));
    // The four options are consecutive and contain the key.
    const auto opts = instance_options(inst);
    ASSERT_EQ(opts.size(), 4u);
    for (std::size_t i = 1; i < 4; ++i)
      EXPECT_EQ(std::stoi(opts[i].second), std::stoi(opts[i - 1].second) + 1);
  }
}

TEST(Rule, DiagonalIsFalse) {
  Rng rng(1);
  const TaskInstance inst = build_rule_qa(l_maze(), rng, {RuleTemplate::diagonal, {}, {}, {}});
  EXPECT_EQ(inst.payload["value"], false);
  EXPECT_EQ(inst.answer_key, "B");
}

TEST(Rule, MoveRightFromCorridorStart) {
  Rng rng(1);
  const Maze m = with_path(oracle::corridor(4));
  const TaskInstance inst =
      build_rule_qa(m, rng, {RuleTemplate::move_validity, {}, m.start, D::right});
  EXPECT_EQ(inst.payload["value"], true);
  EXPECT_EQ(inst.answer_key, "A");
}

TEST(Rule, ReachabilityKeyedByBfs) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const Maze m = generate(GenConfig::defaults(2, s));
    Rng rng(s);
    const TaskInstance inst =
        build_rule_qa(m, rng, {RuleTemplate::reachability, s % 2 == 0, {}, {}});
    ASSERT_EQ(inst.payload["template"], "reachability");
    const Coord c = coord_from_json(inst.payload["cell"]);
    const bool reach = oracle::dist_at(m, oracle::bfs(m, m.start), c) >= 0;
    EXPECT_EQ(inst.payload["value"], reach);
    EXPECT_EQ(reach, s % 2 == 0);
  }
}

TEST(Rule, RequestedPolarityIsHonoured) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const Maze m = generate(GenConfig::defaults(1 + static_cast<int>(s % 6), s));
    Rng rng(s);
    const bool want = s % 3 != 0;
    const TaskInstance inst = build_rule_qa(m, rng, {{}, want, {}, {}});
    EXPECT_EQ(inst.payload["value"], want);
  }
}

TEST(Instances, JsonRoundTripAndRederive) {
  Rng rng(5);
  const Maze m = generate(GenConfig::defaults(3, 77));
  std::vector<TaskInstance> all{build_route_planning(m), build_turnpoint_qa(m, rng),
                                build_rule_qa(m, rng)};
  if (auto ns = build_next_step_sampled(m, rng)) all.push_back(*ns);
  for (const TaskInstance& inst : all) {
    const TaskInstance back = instance_from_json(instance_to_json(inst));
    EXPECT_EQ(instance_to_json(back), instance_to_json(inst));
    EXPECT_EQ(rederive_answer_key(back), inst.answer_key);
  }
}

TEST(Splits, WithinOneOfEightOneOne) {
  for (std::size_t n = 0; n < 500; ++n) {
    const auto s = split_sizes(n);
    EXPECT_EQ(s[0] + s[1] + s[2], n);
    EXPECT_LE(std::abs(static_cast<double>(s[0]) - 0.8 * static_cast<double>(n)), 1.0);
    EXPECT_LE(std::abs(static_cast<double>(s[1]) - 0.1 * static_cast<double>(n)), 1.0);
    EXPECT_LE(std::abs(static_cast<double>(s[2]) - 0.1 * static_cast<double>(n)), 1.0);
  }
}

DatasetConfig small(std::uint64_t seed, unsigned threads = 0) {
  DatasetConfig dc;
  dc.turnpoint = 110;
  dc.rule = 50;
  dc.structured = 70;
  dc.seed = seed;
  dc.threads = threads;
  return dc;
}

TEST(Dataset, QuotasAndStrata) {
  const Dataset ds = build_dataset(small(3));
  std::map<TaskFamily, std::size_t> fam;
  std::map<std::pair<TaskFamily, int>, std::map<std::string, std::size_t>> strata;
  for (const TaskInstance& inst : ds.instances) {
    ++fam[inst.family];
    ++strata[{inst.family, inst.tier}][inst.split];
    EXPECT_EQ(rederive_answer_key(inst), inst.answer_key) << inst.id;
  }
  EXPECT_EQ(fam[TaskFamily::turnpoint], 110u);
  EXPECT_EQ(fam[TaskFamily::rule], 50u);
  EXPECT_EQ(fam[TaskFamily::route_planning] + fam[TaskFamily::next_step], 70u);
  for (auto& [key, counts] : strata) {
    const double n = static_cast<double>(counts["train"] + counts["val"] + counts["test"]);
    EXPECT_LE(std::abs(static_cast<double>(counts["train"]) - 0.8 * n), 1.0);
    EXPECT_LE(std::abs(static_cast<double>(counts["val"]) - 0.1 * n), 1.0);
    EXPECT_LE(std::abs(static_cast<double>(counts["test"]) - 0.1 * n), 1.0);
  }
}

TEST(Dataset, ThreadCountDoesNotChangeOutput) {
  oracle::TempDir a("ds-a"), b("ds-b");
  write_dataset(build_dataset(small(9, 1)), a.path());
  write_dataset(build_dataset(small(9, 7)), b.path());
  for (const char* f : {"train.jsonl", "val.jsonl", "test.jsonl", "manifest.json"})
    EXPECT_EQ(slurp(a.path() / f), slurp(b.path() / f)) << f;
}

TEST(Dataset, SeedChangesOutput) {
  oracle::TempDir a("ds-c"), b("ds-d");
  write_dataset(build_dataset(small(1)), a.path());
  write_dataset(build_dataset(small(2)), b.path());
  EXPECT_NE(slurp(a.path() / "train.jsonl"), slurp(b.path() / "train.jsonl"));
}

TEST(Dataset, LoadSplitRoundTrip) {
  oracle::TempDir dir("ds-e");
  const Dataset ds = build_dataset(small(4));
  write_dataset(ds, dir.path());
  const auto all = load_split(dir.path(), "");
  EXPECT_EQ(all.size(), ds.instances.size());
  const auto test = load_split(dir.path(), "test");
  for (const TaskInstance& inst : test) EXPECT_EQ(inst.split, "test");
  EXPECT_THROW(load_split(dir.path(), "nope"), Error);
}

}  // namespace
}  // namespace turnmaze
