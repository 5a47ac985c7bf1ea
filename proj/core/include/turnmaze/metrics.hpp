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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "turnmaze/maze.hpp"
#include "turnmaze/maze_io.hpp"
#include "turnmaze/tasks.hpp"

namespace turnmaze {

struct RouteScore {
  std::size_t valid_steps = 0;
  std::size_t optimal_steps = 0;
  double cr = 0.0;
  bool sr = false;
};

/// nullopt `predicted` means the response could not be parsed.
RouteScore score_route(const Maze& maze, const std::optional<Trajectory>& predicted);

bool score_choice(const TaskInstance& inst, std::optional<char> parsed);

struct ScoreRow {
  std::string id;
  TaskFamily family = TaskFamily::route_planning;
  int tier = 0;
  std::string style;
  std::string model;
  std::optional<RouteScore> route;  // route_planning
  std::optional<bool> correct;      // choice families

  Json to_json() const;
  static ScoreRow from_json(const Json& j);
};

/// Scores one raw response against its instance using the parser's
/// extraction policy.
ScoreRow score_response(const TaskInstance& inst, std::string_view raw_text,
                        std::string style = {}, std::string model = {});

/// Mean of one metric over a group; nullopt when the group is empty.
struct Cell {
  std::optional<double> value;
  std::size_t n = 0;
};

struct AggregateRow {
  std::string model;
  std::string style;
  std::optional<int> tier;  // nullopt = all tiers
  Cell rp_cr, rp_sr, ns_acc, tc_acc, ru_acc;
};

struct ScoreReport {
  std::vector<ScoreRow> rows;
  /// Sorted by (model, style order cot/vot/star/other, tier with "all" first).
  std::vector<AggregateRow> aggregates;

  const AggregateRow* find(std::string_view model, std::string_view style,
                           std::optional<int> tier = std::nullopt) const;
};

ScoreReport aggregate(std::vector<ScoreRow> rows);

/// Percent with two decimals ("29.27"), or "" for an empty group.
std::string format_percent(const Cell& cell);

std::string table1_csv(const ScoreReport& report);
std::string table1_text(const ScoreReport& report);
std::string table4_csv(const ScoreReport& report);
std::string table4_text(const ScoreReport& report);
std::string per_tier_csv(const ScoreReport& report);

inline constexpr std::string_view kTable1Header =
    "Model,Variant,RP.CR,RP.SR,NS.Acc,TC.Acc,RU.Acc";
inline constexpr std::string_view kTable4Header = "Model,Metric,+CoT,+VoT,+Ours";
inline constexpr std::string_view kPerTierHeader =
    "Model,Variant,Tier,RP.CR,RP.SR,NS.Acc,TC.Acc,RU.Acc,N";

}  // namespace turnmaze
