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
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "turnmaze/maze.hpp"
#include "turnmaze/maze_io.hpp"
#include "turnmaze/rng.hpp"

namespace turnmaze {

enum class TaskFamily : std::uint8_t { route_planning, next_step, turnpoint, rule };

inline constexpr std::array<TaskFamily, 4> kTaskFamilies = {
    TaskFamily::route_planning, TaskFamily::next_step, TaskFamily::turnpoint,
    TaskFamily::rule};

std::string_view to_string(TaskFamily f) noexcept;
std::optional<TaskFamily> family_from_string(std::string_view s) noexcept;

/// One question/answer item. Choice families (next_step, turnpoint, rule)
/// carry lettered options in payload["options"] and a letter as answer key;
/// route_planning carries the canonical shortest path.
struct TaskInstance {
  std::string id;
  TaskFamily family = TaskFamily::route_planning;
  int tier = 0;
  Maze maze;
  Json payload = Json::object();
  Json answer_key;
  std::string split;

  bool is_choice() const noexcept { return family != TaskFamily::route_planning; }
};

Json instance_to_json(const TaskInstance& inst);
TaskInstance instance_from_json(const Json& j);

/// Letter -> option text, in letter order.
std::vector<std::pair<char, std::string>> instance_options(const TaskInstance& inst);
/// Movement history of a next_step instance.
Trajectory next_step_prefix(const TaskInstance& inst);
/// Canonical answer of a route_planning instance.
Trajectory route_answer(const TaskInstance& inst);
/// Answer letter of a choice instance.
char answer_letter(const TaskInstance& inst);

/// Option letter for each direction in next-step questions: A=left, B=right,
/// C=up, D=down.
char option_letter(Direction d) noexcept;
std::optional<Direction> option_direction(char letter) noexcept;

TaskInstance build_route_planning(const Maze& maze);

/// Prefix = first `prefix_len` moves of the canonical path. Returns nullopt
/// (skip) when more than one next move stays optimal. Requires
/// 0 < prefix_len < path length; throws ConfigError otherwise.
std::optional<TaskInstance> build_next_step(const Maze& maze, std::size_t prefix_len);

/// Tries prefix lengths in random order until one has a unique optimal next
/// move; nullopt if none does.
std::optional<TaskInstance> build_next_step_sampled(const Maze& maze, Rng& rng);

enum class TurnpointTemplate : std::uint8_t { is_turn_point, turn_count };

struct TurnpointOptions {
  std::optional<TurnpointTemplate> form;
  /// Desired yes/no key for is_turn_point; random when unset.
  std::optional<bool> positive;
  /// Cell to ask about for is_turn_point; chosen to match `positive` when unset.
  std::optional<Coord> cell;
};

TaskInstance build_turnpoint_qa(const Maze& maze, Rng& rng,
                                const TurnpointOptions& opts = {});

enum class RuleTemplate : std::uint8_t { move_validity, diagonal, reachability, constant };

struct RuleOptions {
  std::optional<RuleTemplate> form;
  std::optional<bool> positive;
  std::optional<Coord> cell;
  std::optional<Direction> dir;
};

TaskInstance build_rule_qa(const Maze& maze, Rng& rng, const RuleOptions& opts = {});

/// Recomputes the answer key of any instance from its maze alone.
Json rederive_answer_key(const TaskInstance& inst);

struct DatasetConfig {
  std::size_t turnpoint = 11000;
  std::size_t rule = 5000;
  /// Split evenly between route planning and next-step (route planning takes
  /// the odd item).
  std::size_t structured = 7000;
  std::uint64_t seed = 0;
  int tiers = 6;
  unsigned threads = 0;  // 0 = hardware concurrency
};

enum class Split : std::uint8_t { train, val, test };
std::string_view to_string(Split s) noexcept;

struct StratumCounts {
  TaskFamily family;
  int tier;
  std::size_t train = 0, val = 0, test = 0;
};

struct DatasetManifest {
  std::uint64_t seed = 0;
  int tiers = 0;
  std::map<std::string, std::size_t> family_counts;
  std::vector<StratumCounts> strata;
  /// id -> split, in dataset order.
  std::vector<std::pair<std::string, Split>> assignments;

  Json to_json() const;
};

struct Dataset {
  std::vector<TaskInstance> instances;  // split field filled in
  DatasetManifest manifest;
};

/// Generates one maze per instance (tiers round-robin), builds instances to
/// quota and assigns an 8:1:1 split within each (family, tier) stratum.
/// Deterministic in cfg.seed regardless of thread count.
Dataset build_dataset(const DatasetConfig& cfg);

/// Writes train.jsonl, val.jsonl, test.jsonl and manifest.json.
void write_dataset(const Dataset& ds, const std::filesystem::path& dir);

/// Reads one split file (or all three when `split` is empty).
std::vector<TaskInstance> load_split(const std::filesystem::path& dir,
                                     std::string_view split);

/// Sizes for an n-item stratum; each within one item of 8:1:1.
std::array<std::size_t, 3> split_sizes(std::size_t n) noexcept;

}  // namespace turnmaze
