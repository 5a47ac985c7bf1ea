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

#include <map>

#include "golden_maze.hpp"
#include "oracles.hpp"
#include "turnmaze/metrics.hpp"

namespace turnmaze {
namespace {

using D = Direction;

TEST(ScoreRoute, CanonicalPath) {
  const Maze m = oracle::empty_grid(3, 3);
  const RouteScore s = score_route(m, Trajectory{D::down, D::down, D::right, D::right});
  EXPECT_EQ(s.cr, 1.0);
  EXPECT_TRUE(s.sr);
  EXPECT_EQ(s.valid_steps, 4u);
  EXPECT_EQ(s.optimal_steps, 4u);
}

TEST(ScoreRoute, Unparseable) {
  const RouteScore s = score_route(oracle::empty_grid(3, 3), std::nullopt);
  EXPECT_EQ(s.cr, 0.0);
  EXPECT_FALSE(s.sr);
  EXPECT_EQ(s.valid_steps, 0u);
}

TEST(ScoreRoute, DetourTwoStepsLonger) {
  const Maze m = oracle::empty_grid(3, 3);
  const auto opt = static_cast<std::size_t>(oracle::shortest_len(m));
  std::optional<Trajectory> detour;
  for (const Trajectory& p : oracle::all_paths(m, opt + 2))
    if (p.size() == opt + 2) detour = p;
  ASSERT_TRUE(detour);
  const RouteScore s = score_route(m, detour);
  EXPECT_EQ(s.cr, 1.0);
  EXPECT_FALSE(s.sr);
  EXPECT_EQ(s.valid_steps, opt + 2);
}

TEST(ScoreRoute, EmptyGridHandCases) {
  const Maze m = oracle::empty_grid(3, 3);  // optimal 4
  // Two valid moves, then off the right edge: 2/4.
  EXPECT_EQ(score_route(m, Trajectory{D::right, D::right, D::right}).cr, 0.5);
  // First move invalid: 0/4.
  EXPECT_EQ(score_route(m, Trajectory{D::up, D::right}).cr, 0.0);
  // Three valid moves, stops short: 3/4.
  const RouteScore short3 = score_route(m, Trajectory{D::right, D::down, D::down});
  EXPECT_EQ(short3.cr, 0.75);
  EXPECT_FALSE(short3.sr);
  // Five valid moves then a wall: capped at 1, not a success.
  const RouteScore capped =
      score_route(m, Trajectory{D::right, D::left, D::right, D::down, D::down, D::down});
  EXPECT_EQ(capped.valid_steps, 5u);
  EXPECT_EQ(capped.cr, 1.0);
  EXPECT_FALSE(capped.sr);
  // Empty answer.
  EXPECT_EQ(score_route(m, Trajectory{}).cr, 0.0);
}

TEST(ScoreRoute, MatchesFormulaOnRandomInput) {
  std::mt19937_64 gen(51);
  for (int i = 0; i < 500; ++i) {
    const Maze m = oracle::solvable_field(gen, 5, 5, 25);
    const Trajectory t = oracle::random_moves(gen, gen() % 14);
    const RouteScore s = score_route(m, t);
    const oracle::Walk w = oracle::run(m, t);
    const auto opt = static_cast<double>(oracle::shortest_len(m));
    const auto valid = static_cast<double>(w.cells.size() - 1);
    EXPECT_EQ(s.valid_steps, w.cells.size() - 1);
    EXPECT_DOUBLE_EQ(s.cr, std::min(valid / opt, 1.0));
    EXPECT_EQ(s.sr, !w.bad && w.arrived && valid == opt);
    if (s.sr) EXPECT_EQ(s.cr, 1.0);
  }
}

TEST(ScoreChoice, Cases) {
  TaskInstance inst = testdata::turnpoint_instance();
  inst.answer_key = "B";
  EXPECT_TRUE(score_choice(inst, 'B'));
  EXPECT_FALSE(score_choice(inst, 'A'));
  EXPECT_FALSE(score_choice(inst, std::nullopt));
}

ScoreRow choice_row(TaskFamily f, int tier, bool ok, std::string style = "cot") {
  ScoreRow r;
  r.id = "x";
  r.family = f;
  r.tier = tier;
  r.style = std::move(style);
  r.model = "m";
  r.correct = ok;
  return r;
}

ScoreRow route_row(int tier, double cr, bool sr, std::string style = "cot") {
  ScoreRow r;
  r.family = TaskFamily::route_planning;
  r.tier = tier;
  r.style = std::move(style);
  r.model = "m";
  r.route = RouteScore{0, 0, cr, sr};
  return r;
}

TEST(Aggregate, SevenOfTen) {
  std::vector<ScoreRow> rows;
  for (int i = 0; i < 10; ++i) rows.push_back(choice_row(TaskFamily::turnpoint, 1, i < 7));
  const ScoreReport r = aggregate(rows);
  const AggregateRow* a = r.find("m", "cot");
  ASSERT_TRUE(a);
  EXPECT_EQ(format_percent(a->tc_acc), "70.00");
  EXPECT_EQ(a->tc_acc.n, 10u);
  EXPECT_FALSE(a->rp_cr.value);
}

TEST(Aggregate, SinglePerfectRoute) {
  const ScoreReport r = aggregate({route_row(2, 1.0, true)});
  const AggregateRow* a = r.find("m", "cot");
  ASSERT_TRUE(a);
  EXPECT_EQ(format_percent(a->rp_cr), "100.00");
  EXPECT_EQ(format_percent(a->rp_sr), "100.00");
  EXPECT_EQ(format_percent(a->ns_acc), "");
}

TEST(Aggregate, TwoDecimalValues) {
  EXPECT_EQ(format_percent(Cell{0.2927, 1}), "29.27");
  EXPECT_EQ(format_percent(Cell{1.0 / 3.0, 3}), "33.33");
  EXPECT_EQ(format_percent(Cell{}), "");
}

TEST(Aggregate, UnweightedMeansPerTierAndOverall) {
  std::mt19937_64 gen(61);
  std::vector<ScoreRow> rows;
  std::map<int, std::pair<double, int>> by_tier;
  double total = 0;
  for (int i = 0; i < 200; ++i) {
    const int tier = 1 + static_cast<int>(gen() % 4);
    const double cr = static_cast<double>(gen() % 101) / 100.0;
    rows.push_back(route_row(tier, cr, cr == 1.0, "vot"));
    by_tier[tier].first += cr;
    ++by_tier[tier].second;
    total += cr;
  }
  const ScoreReport r = aggregate(rows);
  EXPECT_NEAR(*r.find("m", "vot")->rp_cr.value, total / 200.0, 1e-12);
  for (const auto& [tier, acc] : by_tier)
    EXPECT_NEAR(*r.find("m", "vot", tier)->rp_cr.value, acc.first / acc.second, 1e-12);
}

TEST(Reports, Table1Layout) {
  const ScoreReport r = aggregate({route_row(1, 1.0, true, "star"),
                                   choice_row(TaskFamily::rule, 1, true, "star")});
  const std::string csv = table1_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "Model,Variant,RP.CR,RP.SR,NS.Acc,TC.Acc,RU.Acc");
  EXPECT_NE(csv.find("m,+Ours,100.00,100.00,,,100.00\n"), std::string::npos);
  EXPECT_NE(table1_text(r).find("RP.CR"), std::string::npos);
}

TEST(Reports, Table4Layout) {
  std::vector<ScoreRow> rows;
  for (const char* s : {"cot", "vot", "star"}) {
    rows.push_back(route_row(1, 0.5, false, s));
    rows.push_back(choice_row(TaskFamily::next_step, 1, true, s));
  }
  const std::string csv = table4_csv(aggregate(rows));
  EXPECT_EQ(csv,
            "Model,Metric,+CoT,+VoT,+Ours\n"
            "m,CR,50.00,50.00,50.00\n"
            "m,SR,0.00,0.00,0.00\n"
            "m,Acc,100.00,100.00,100.00\n");
}

TEST(Reports, EmptyIsHeaderOnly) {
  const ScoreReport r = aggregate({});
  EXPECT_EQ(table1_csv(r), std::string(kTable1Header) + "\n");
  EXPECT_EQ(table4_csv(r), std::string(kTable4Header) + "\n");
  EXPECT_EQ(per_tier_csv(r), std::string(kPerTierHeader) + "\n");
}

TEST(ScoreRows, JsonRoundTrip) {
  for (const ScoreRow& row : {route_row(3, 0.25, false), choice_row(TaskFamily::rule, 2, true)})
    EXPECT_EQ(ScoreRow::from_json(row.to_json()).to_json(), row.to_json());
}

TEST(ScoreResponse, UsesParserPolicy) {
  const TaskInstance rp = testdata::route_instance();
  const ScoreRow ok = score_response(rp, "The complete path is: " + to_string(route_answer(rp)));
  EXPECT_TRUE(ok.route->sr);
  EXPECT_FALSE(score_response(rp, "no answer").route->sr);
  const TaskInstance ns = testdata::next_step_instance();
  EXPECT_TRUE(*score_response(ns, std::string("Answer: ") + answer_letter(ns)).correct);
  EXPECT_FALSE(*score_response(ns, "no answer").correct);
}

}  // namespace
}  // namespace turnmaze
