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

#include "golden_maze.hpp"
#include "oracles.hpp"
#include "turnmaze/generator.hpp"
#include "turnmaze/parser.hpp"
#include "turnmaze/prompts.hpp"

namespace turnmaze {
namespace {

using D = Direction;

Trajectory list_ok(std::string_view text) {
  auto r = parse_direction_list(text);
  EXPECT_TRUE(std::holds_alternative<Trajectory>(r)) << text;
  return std::holds_alternative<Trajectory>(r) ? std::get<Trajectory>(r) : Trajectory{};
}

TEST(DirectionList, CaseIsNormalised) {
  EXPECT_EQ(list_ok(R"(The complete path is: ["down", "Right"])"), (Trajectory{D::down, D::right}));
}

TEST(DirectionList, DiagonalTokenRejected) {
  const auto r = parse_direction_list(R"(["up","northeast"])");
  const auto* f = std::get_if<ListParseFailure>(&r);
  ASSERT_TRUE(f);
  EXPECT_EQ(f->reason, ListFailure::invalid_token);
  EXPECT_EQ(f->token, "northeast");
}

TEST(DirectionList, LastListWins) {
  EXPECT_EQ(list_ok(R"(First ["up"], then after checking: ["left", "left"])"),
            (Trajectory{D::left, D::left}));
}

TEST(DirectionList, VariantsOfQuoting) {
  EXPECT_EQ(list_ok("[up, down]"), (Trajectory{D::up, D::down}));
  EXPECT_EQ(list_ok("['UP', 'left']"), (Trajectory{D::up, D::left}));
  EXPECT_EQ(list_ok("[]"), Trajectory{});
}

TEST(DirectionList, CoordinateListAfterAnswerIgnored) {
  EXPECT_EQ(list_ok(R"(Path: ["right", "down"] which ends at [2, 3].)"),
            (Trajectory{D::right, D::down}));
}

TEST(DirectionList, NoList) {
  const auto r = parse_direction_list("go right twice");
  ASSERT_TRUE(std::holds_alternative<ListParseFailure>(r));
  EXPECT_EQ(std::get<ListParseFailure>(r).reason, ListFailure::no_list);
}

TEST(DirectionList, RoundTripsRandomTrajectories) {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 300; ++i) {
    const Trajectory t = oracle::random_moves(gen, gen() % 20);
    EXPECT_EQ(list_ok("Answer: " + to_string(t)), t);
  }
}

TEST(Choice, Examples) {
  EXPECT_EQ(parse_choice("Therefore, the answer is B."), 'B');
  EXPECT_EQ(parse_choice("a"), 'A');
  EXPECT_FALSE(parse_choice("the maze is hard"));
}

TEST(Choice, MoreForms) {
  EXPECT_EQ(parse_choice("Option (C) looks right"), 'C');
  EXPECT_EQ(parse_choice("I first thought A, but the answer is D"), 'D');
  EXPECT_EQ(parse_choice("Answer: c"), 'C');
  EXPECT_FALSE(parse_choice("A good question with no answer"));
}

TEST(Choice, OptionWordFallback) {
  const TaskInstance inst = testdata::next_step_instance();
  const char key = answer_letter(inst);
  const auto word = std::string(to_string(*option_direction(key)));
  EXPECT_EQ(parse_instance_choice(inst, "I would go " + word + " here."), key);
  EXPECT_EQ(parse_instance_choice(inst, "The answer is B"), 'B');
  EXPECT_FALSE(parse_instance_choice(inst, "no idea"));
}

TEST(ParsedResponse, JsonShape) {
  const ParsedResponse p = parse_route_response(R"(["up"])");
  const Json j = p.to_json();
  EXPECT_EQ(j["kind"], "direction_list");
  EXPECT_EQ(j["trajectory"], Json::array({"up"}));
  EXPECT_EQ(parse_choice_response("nothing").to_json()["kind"], "unparseable");
}

TEST(StarParse, RoundTripsRenderedSessions) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Maze m = generate(GenConfig::defaults(1 + static_cast<int>(s % 6), s));
    const StarSession want = build_star_session(m, m.optimal_path);
    const ParsedResponse p = parse_star_session(session_text(want));
    ASSERT_TRUE(p.session);
    EXPECT_EQ(*p.session, want);
    EXPECT_TRUE(p.diagnostics.empty());
    EXPECT_EQ(p.trajectory, m.optimal_path);
  }
}

TEST(StarParse, EmojiGlyphs) {
  const auto g = *GlyphTable::named("emoji");
  const Maze m = generate(GenConfig::defaults(2, 5));
  const StarSession want = build_star_session(m, m.optimal_path, g);
  const ParsedResponse p = parse_star_session(session_text(want, g), g);
  ASSERT_TRUE(p.session);
  EXPECT_EQ(*p.session, want);
  EXPECT_TRUE(check_consistency(m, *p.session, g).clean());
}

TEST(StarParse, SummaryWithoutMaps) {
  const std::string text =
      "step1: from the starting point, move right to the next cell.\n"
      "step2: move down to reach the destination.\n"
      "Summary of steps: The shortest path is: [\"right\", \"down\"]\n";
  const ParsedResponse p = parse_star_session(text);
  ASSERT_EQ(p.kind, ResponseKind::star_session);
  EXPECT_EQ(p.trajectory, (Trajectory{D::right, D::down}));
  ASSERT_FALSE(p.diagnostics.empty());
  EXPECT_NE(p.diagnostics.front().find("no map"), std::string::npos);
}

TEST(StarParse, NothingRecognisable) {
  EXPECT_EQ(parse_star_session("I could not solve it.").kind, ResponseKind::unparseable);
}

TEST(StarParse, TruncationKeepsAPrefix) {
  std::mt19937_64 gen(41);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Maze m = generate(GenConfig::defaults(2, s + 100));
    const std::string text = render_star_session(m, m.optimal_path);
    // Cut inside the final map block: every step is still recovered.
    const std::size_t last_after = text.rfind("After step");
    const std::size_t summary = text.find("Summary of steps");
    const std::size_t cut = last_after + (gen() % (summary - last_after));
    const ParsedResponse p = parse_star_session(text.substr(0, cut));
    ASSERT_TRUE(p.session);
    EXPECT_EQ(p.session->moves(), m.optimal_path);
    // Any cut: the recovered moves are a prefix of the truth.
    for (int k = 0; k < 20; ++k) {
      const std::size_t at = gen() % text.size();
      const ParsedResponse q = parse_star_session(text.substr(0, at));
      if (!q.session) continue;
      const Trajectory got = q.session->moves();
      ASSERT_LE(got.size(), m.optimal_path.size());
      EXPECT_TRUE(std::equal(got.begin(), got.end(), m.optimal_path.begin()));
    }
  }
}

TEST(Consistency, GroundTruthIsClean) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Maze m = generate(GenConfig::defaults(1 + static_cast<int>(s % 6), s + 7));
    EXPECT_TRUE(check_consistency(m, build_star_session(m, m.optimal_path)).clean());
  }
}

TEST(Consistency, IconContradictsDeclaredMove) {
  const Maze m = oracle::empty_grid(3, 3);
  StarSession s = build_star_session(m, {D::right, D::down});
  // Declares "left" from (0,1) but the icon is drawn to the right.
  s.steps[1].move = D::left;
  s.steps[1].description = "move left to the next cell.";
  s.steps[1].map_after = render_map(m, Coord{0, 2});
  const ConsistencyReport r = check_consistency(m, s);
  ASSERT_TRUE(r.has(ViolationKind::logical_inconsistency));
  EXPECT_EQ(r.violations.front().step, 2u);
}

TEST(Consistency, MovedObstacleIsCorruption) {
  Maze m = oracle::empty_grid(3, 3);
  m.set_obstacle({1, 1}, true);
  StarSession s = build_star_session(m, {D::right, D::right});
  Maze shifted = m;
  shifted.set_obstacle({1, 1}, false);
  shifted.set_obstacle({2, 1}, true);
  s.steps[0].map_after = render_map(shifted, Coord{0, 1});
  EXPECT_TRUE(check_consistency(m, s).has(ViolationKind::structural_corruption));
}

TEST(Consistency, InvalidMoveIsConstraintViolation) {
  Maze m = oracle::empty_grid(3, 3);
  m.set_obstacle({0, 1}, true);
  StarSession s;
  s.steps = build_step_blocks(m, m.start, {D::right}, {});
  EXPECT_TRUE(check_consistency(m, s).has(ViolationKind::constraint_violation));
}

TEST(Consistency, MissingIconIsInconsistent) {
  const Maze m = oracle::corridor(3);
  StarSession s = build_star_session(m, {D::right, D::right});
  s.steps[0].map_after = render_map(m, std::nullopt);
  EXPECT_TRUE(check_consistency(m, s).has(ViolationKind::logical_inconsistency));
}

}  // namespace
}  // namespace turnmaze
