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

#include "turnmaze/tasks.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "turnmaze/errors.hpp"
#include "turnmaze/generator.hpp"
#include "turnmaze/solver.hpp"

namespace turnmaze {

std::string_view to_string(TaskFamily f) noexcept {
  switch (f) {
    case TaskFamily::route_planning:
      return "route_planning";
    case TaskFamily::next_step:
      return "next_step";
    case TaskFamily::turnpoint:
      return "turnpoint";
    case TaskFamily::rule:
      return "rule";
  }
  return "?";
}

std::optional<TaskFamily> family_from_string(std::string_view s) noexcept {
  for (TaskFamily f : kTaskFamilies)
    if (s == to_string(f)) return f;
  return std::nullopt;
}

std::string_view to_string(Split s) noexcept {
  switch (s) {
    case Split::train:
      return "train";
    case Split::val:
      return "val";
    case Split::test:
      return "test";
  }
  return "?";
}

Json instance_to_json(const TaskInstance& inst) {
  Json j;
  j["id"] = inst.id;
  j["family"] = std::string(to_string(inst.family));
  j["tier"] = inst.tier;
  j["maze"] = maze_to_json(inst.maze);
  j["payload"] = inst.payload;
  j["answer_key"] = inst.answer_key;
  j["split"] = inst.split;
  return j;
}

TaskInstance instance_from_json(const Json& j) {
  try {
    TaskInstance inst;
    inst.id = j.at("id").get<std::string>();
    const auto fam = family_from_string(j.at("family").get<std::string>());
    if (!fam) throw FormatError("unknown family in instance " + inst.id);
    inst.family = *fam;
    inst.tier = j.at("tier").get<int>();
    inst.maze = maze_from_json(j.at("maze"));
    inst.payload = j.at("payload");
    inst.answer_key = j.at("answer_key");
    if (auto it = j.find("split"); it != j.end() && it->is_string())
      inst.split = it->get<std::string>();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad instance record: ") + e.what());
  }
}

std::vector<std::pair<char, std::string>> instance_options(const TaskInstance& inst) {
  std::vector<std::pair<char, std::string>> out;
  auto it = inst.payload.find("options");
  if (it == inst.payload.end()) return out;
  for (const auto& [k, v] : it->items())
    if (k.size() == 1) out.emplace_back(k[0], v.get<std::string>());
  std::sort(out.begin(), out.end());
  return out;
}

Trajectory next_step_prefix(const TaskInstance& inst) {
  return trajectory_from_json(inst.payload.at("prefix"));
}

Trajectory route_answer(const TaskInstance& inst) {
  return trajectory_from_json(inst.answer_key);
}

char answer_letter(const TaskInstance& inst) {
  if (!inst.answer_key.is_string() || inst.answer_key.get<std::string>().size() != 1)
    throw FormatError("instance " + inst.id + " has no letter answer");
  return inst.answer_key.get<std::string>()[0];
}

char option_letter(Direction d) noexcept {
  switch (d) {
    case Direction::left:
      return 'A';
    case Direction::right:
      return 'B';
    case Direction::up:
      return 'C';
    case Direction::down:
      return 'D';
  }
  return '?';
}

std::optional<Direction> option_direction(char letter) noexcept {
  switch (letter) {
    case 'A':
      return Direction::left;
    case 'B':
      return Direction::right;
    case 'C':
      return Direction::up;
    case 'D':
      return Direction::down;
    default:
      return std::nullopt;
  }
}

namespace {

std::string letter(char c) { return std::string(1, c); }

std::string cell_text(Coord c) {
  return "(" + std::to_string(c.row) + ", " + std::to_string(c.col) + ")";
}

Json true_false_options() {
  Json o;
  o["A"] = "true";
  o["B"] = "false";
  return o;
}

Json yes_no_options() {
  Json o;
  o["A"] = "yes";
  o["B"] = "no";
  return o;
}

// Letter of the option whose text equals `value`.
std::string letter_for(const Json& payload, const std::string& value) {
  for (const auto& [k, v] : payload.at("options").items())
    if (v.get<std::string>() == value) return k;
  throw FormatError("no option carries the value " + value);
}

std::vector<Coord> passable_cells(const Maze& m) {
  std::vector<Coord> out;
  for (int r = 0; r < m.height(); ++r)
    for (int c = 0; c < m.width(); ++c)
      if (m.passable({r, c})) out.push_back({r, c});
  return out;
}

constexpr std::string_view kCoordNote =
    " Rows and columns are numbered from 0, starting at the top-left cell.";

struct ConstantRule {
  std::string_view text;
  bool value;
};

constexpr std::array<ConstantRule, 5> kConstantRules = {{
    {"Each move changes the position by exactly one cell up, down, left, or right.",
     true},
    {"Moving into an obstacle cell is not allowed.", true},
    {"Moving through an obstacle cell is allowed.", false},
    {"Moving off the edge of the map is allowed.", false},
    {"A single move may skip over one cell.", false},
}};

bool evaluate_rule(const Maze& maze, const Json& payload) {
  const std::string form = payload.at("template").get<std::string>();
  if (form == "move_validity") {
    const Coord cell = coord_from_json(payload.at("cell"));
    const auto dir = direction_from_word(payload.at("direction").get<std::string>());
    if (!dir) throw FormatError("bad direction in rule payload");
    return maze.passable(cell) && apply_move(maze, cell, *dir).ok();
  }
  if (form == "diagonal") return false;
  if (form == "reachability")
    return reachable(maze, maze.start, coord_from_json(payload.at("cell")));
  if (form == "constant") {
    const auto idx = payload.at("statement").get<std::size_t>();
    if (idx >= kConstantRules.size()) throw FormatError("unknown constant rule");
    return kConstantRules[idx].value;
  }
  throw FormatError("unknown rule template " + form);
}

}  // namespace

TaskInstance build_route_planning(const Maze& maze) {
  const PathSolution sol = shortest_path(maze);
  TaskInstance inst;
  inst.id = "rp-" + maze_id(maze);
  inst.family = TaskFamily::route_planning;
  inst.tier = maze.tier;
  inst.maze = maze;
  inst.maze.optimal_path = sol.path;
  inst.payload["optimal_length"] = sol.length;
  inst.payload["unique"] = sol.is_unique;
  inst.answer_key = trajectory_to_json(sol.path);
  return inst;
}

std::optional<TaskInstance> build_next_step(const Maze& maze, std::size_t prefix_len) {
  const PathSolution sol = shortest_path(maze);
  if (prefix_len == 0 || prefix_len >= sol.length)
    throw ConfigError("prefix length must lie strictly between 0 and " +
                      std::to_string(sol.length));
  const Trajectory prefix(sol.path.begin(),
                          sol.path.begin() + static_cast<std::ptrdiff_t>(prefix_len));
  const std::vector<Direction> next = optimal_next(maze, prefix);
  if (next.size() != 1) return std::nullopt;

  TaskInstance inst;
  inst.id = "ns-" + maze_id(maze) + "-" + std::to_string(prefix_len);
  inst.family = TaskFamily::next_step;
  inst.tier = maze.tier;
  inst.maze = maze;
  inst.maze.optimal_path = sol.path;
  inst.payload["prefix"] = trajectory_to_json(prefix);
  inst.payload["prefix_len"] = prefix_len;
  Json options;
  for (Direction d : kDirections) options[letter(option_letter(d))] = std::string(to_string(d));
  inst.payload["options"] = options;
  inst.payload["value"] = std::string(to_string(next.front()));
  inst.answer_key = letter(option_letter(next.front()));
  return inst;
}

std::optional<TaskInstance> build_next_step_sampled(const Maze& maze, Rng& rng) {
  const std::size_t length = shortest_path(maze).length;
  if (length < 2) return std::nullopt;
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k < length; ++k) ks.push_back(k);
  rng.shuffle(std::span<std::size_t>(ks));
  for (std::size_t k : ks)
    if (auto inst = build_next_step(maze, k)) return inst;
  return std::nullopt;
}

TaskInstance build_turnpoint_qa(const Maze& maze, Rng& rng, const TurnpointOptions& opts) {
  TaskInstance inst;
  inst.family = TaskFamily::turnpoint;
  inst.tier = maze.tier;
  inst.maze = maze;
  if (inst.maze.turn_points.empty() && !maze.optimal_path.empty())
    inst.maze.turn_points = annotate_turnpoints(maze);
  const std::vector<Coord>& tps = inst.maze.turn_points;

  const TurnpointTemplate form =
      opts.form.value_or(rng.coin() ? TurnpointTemplate::is_turn_point
                                    : TurnpointTemplate::turn_count);
  if (form == TurnpointTemplate::is_turn_point) {
    Coord cell;
    if (opts.cell) {
      cell = *opts.cell;
    } else {
      std::vector<Coord> negatives;
      for (Coord c : passable_cells(maze))
        if (std::find(tps.begin(), tps.end(), c) == tps.end()) negatives.push_back(c);
      bool positive = opts.positive.value_or(rng.coin());
      if (tps.empty()) positive = false;
      if (negatives.empty()) positive = true;
      const std::vector<Coord>& pool = positive ? tps : negatives;
      if (pool.empty()) throw ConfigError("maze has no passable cells");
      cell = pool[rng.below(pool.size())];
    }
    const bool value = std::find(tps.begin(), tps.end(), cell) != tps.end();
    inst.payload["template"] = "is_turn_point";
    inst.payload["cell"] = coord_to_json(cell);
    inst.payload["question"] = "Is cell " + cell_text(cell) + " a turn point?" +
                               std::string(kCoordNote);
    inst.payload["options"] = yes_no_options();
    inst.payload["value"] = value;
    inst.answer_key = value ? "A" : "B";
    inst.id = "tc-" + maze_id(maze) + "-" + std::to_string(cell.row) + "-" +
              std::to_string(cell.col);
  } else {
    const std::size_t value = count_turns(shortest_path(maze).path);
    const std::size_t offset = std::min<std::size_t>(rng.below(4), value);
    const std::size_t lo = value - offset;
    Json options;
    for (std::size_t i = 0; i < 4; ++i)
      options[letter(static_cast<char>('A' + i))] = std::to_string(lo + i);
    inst.payload["template"] = "turn_count";
    inst.payload["question"] =
        "How many turn points (cells where the shortest path changes direction) lie on "
        "the optimal path from the start to the destination?";
    inst.payload["options"] = options;
    inst.payload["value"] = value;
    inst.answer_key = letter(static_cast<char>('A' + offset));
    inst.id = "tc-" + maze_id(maze) + "-count";
  }
  return inst;
}

TaskInstance build_rule_qa(const Maze& maze, Rng& rng, const RuleOptions& opts) {
  TaskInstance inst;
  inst.family = TaskFamily::rule;
  inst.tier = maze.tier;
  inst.maze = maze;
  inst.payload["options"] = true_false_options();

  const bool positive = opts.positive.value_or(rng.coin());
  RuleTemplate form;
  if (opts.form) {
    form = *opts.form;
  } else {
    static constexpr std::array<RuleTemplate, 3> kPositive = {
        RuleTemplate::move_validity, RuleTemplate::reachability, RuleTemplate::constant};
    static constexpr std::array<RuleTemplate, 4> kNegative = {
        RuleTemplate::move_validity, RuleTemplate::reachability, RuleTemplate::diagonal,
        RuleTemplate::constant};
    form = positive ? kPositive[rng.below(kPositive.size())]
                    : kNegative[rng.below(kNegative.size())];
  }

  const std::vector<Coord> open = passable_cells(maze);
  if (form == RuleTemplate::reachability && !opts.cell) {
    const std::vector<int> dist = distance_field(maze, maze.start);
    std::vector<Coord> pool;
    for (int r = 0; r < maze.height(); ++r)
      for (int c = 0; c < maze.width(); ++c) {
        const Coord cell{r, c};
        const bool reach = dist[maze.index(cell)] != kUnreachable;
        if (reach == positive && cell != maze.start) pool.push_back(cell);
      }
    if (pool.empty())
      form = RuleTemplate::move_validity;
    else
      inst.payload["cell"] = coord_to_json(pool[rng.below(pool.size())]);
  }
  if (form == RuleTemplate::move_validity && !(opts.cell && opts.dir)) {
    std::vector<std::pair<Coord, Direction>> pool;
    for (Coord c : open)
      for (Direction d : kDirections)
        if (apply_move(maze, c, d).ok() == positive) pool.emplace_back(c, d);
    if (pool.empty()) {
      form = RuleTemplate::constant;
    } else {
      const auto [cell, dir] = pool[rng.below(pool.size())];
      inst.payload["cell"] = coord_to_json(cell);
      inst.payload["direction"] = std::string(to_string(dir));
    }
  } else if (form == RuleTemplate::move_validity) {
    inst.payload["cell"] = coord_to_json(*opts.cell);
    inst.payload["direction"] = std::string(to_string(*opts.dir));
  }
  if (form == RuleTemplate::reachability && opts.cell)
    inst.payload["cell"] = coord_to_json(*opts.cell);

  std::string proposition;
  switch (form) {
    case RuleTemplate::move_validity: {
      const Coord cell = coord_from_json(inst.payload["cell"]);
      inst.payload["template"] = "move_validity";
      proposition = "Moving " + inst.payload["direction"].get<std::string>() +
                    " from cell " + cell_text(cell) + " is a valid move." +
                    std::string(kCoordNote);
      break;
    }
    case RuleTemplate::diagonal:
      inst.payload["template"] = "diagonal";
      proposition = "Diagonal movement is allowed.";
      break;
    case RuleTemplate::reachability: {
      const Coord cell = coord_from_json(inst.payload["cell"]);
      inst.payload["template"] = "reachability";
      proposition = "Cell " + cell_text(cell) + " can be reached from the start." +
                    std::string(kCoordNote);
      break;
    }
    case RuleTemplate::constant: {
      std::vector<std::size_t> pool;
      for (std::size_t i = 0; i < kConstantRules.size(); ++i)
        if (kConstantRules[i].value == positive) pool.push_back(i);
      const std::size_t idx = pool[rng.below(pool.size())];
      inst.payload["template"] = "constant";
      inst.payload["statement"] = idx;
      proposition = std::string(kConstantRules[idx].text);
      break;
    }
  }
  inst.payload["proposition"] = proposition;
  inst.payload["question"] = "True or false: " + proposition;
  const bool value = evaluate_rule(maze, inst.payload);
  inst.payload["value"] = value;
  inst.answer_key = value ? "A" : "B";
  inst.id = "ru-" + maze_id(maze) + "-" + inst.payload["template"].get<std::string>();
  return inst;
}

Json rederive_answer_key(const TaskInstance& inst) {
  const Maze& maze = inst.maze;
  switch (inst.family) {
    case TaskFamily::route_planning:
      return trajectory_to_json(shortest_path(maze).path);
    case TaskFamily::next_step: {
      const std::vector<Direction> next = optimal_next(maze, next_step_prefix(inst));
      if (next.size() != 1) throw FormatError("next-step ground truth is not unique");
      return letter(option_letter(next.front()));
    }
    case TaskFamily::turnpoint: {
      const std::string form = inst.payload.at("template").get<std::string>();
      if (form == "is_turn_point") {
        const std::vector<Coord> tps = annotate_turnpoints(maze);
        const Coord cell = coord_from_json(inst.payload.at("cell"));
        const bool value = std::find(tps.begin(), tps.end(), cell) != tps.end();
        return letter_for(inst.payload, value ? "yes" : "no");
      }
      return letter_for(inst.payload,
                        std::to_string(count_turns(shortest_path(maze).path)));
    }
    case TaskFamily::rule:
      return letter_for(inst.payload, evaluate_rule(maze, inst.payload) ? "true" : "false");
  }
  return {};
}

std::array<std::size_t, 3> split_sizes(std::size_t n) noexcept {
  const std::size_t train = (8 * n + 5) / 10;
  const std::size_t val = (n + 5) / 10;
  return {train, val, n - train - val};
}

Json DatasetManifest::to_json() const {
  Json j;
  j["seed"] = seed;
  j["tiers"] = tiers;
  Json counts = Json::object();
  for (const auto& [k, v] : family_counts) counts[k] = v;
  j["family_counts"] = counts;
  j["category_counts"] = {
      {"turnpoint", family_counts.count("turnpoint") ? family_counts.at("turnpoint") : 0},
      {"rule", family_counts.count("rule") ? family_counts.at("rule") : 0},
      {"structured",
       (family_counts.count("route_planning") ? family_counts.at("route_planning") : 0) +
           (family_counts.count("next_step") ? family_counts.at("next_step") : 0)}};
  std::size_t sizes[3] = {0, 0, 0};
  Json strata_json = Json::array();
  for (const StratumCounts& s : strata) {
    strata_json.push_back({{"family", std::string(to_string(s.family))},
                           {"tier", s.tier},
                           {"train", s.train},
                           {"val", s.val},
                           {"test", s.test}});
    sizes[0] += s.train;
    sizes[1] += s.val;
    sizes[2] += s.test;
  }
  j["split_sizes"] = {{"train", sizes[0]}, {"val", sizes[1]}, {"test", sizes[2]}};
  j["strata"] = strata_json;
  Json assign = Json::object();
  for (const auto& [id, split] : assignments) assign[id] = std::string(to_string(split));
  j["assignments"] = assign;
  return j;
}

namespace {

struct PlanItem {
  TaskFamily family;
  std::size_t index;
  int tier;
  TurnpointOptions tc;
  std::optional<bool> rule_positive;
};

const char* id_prefix(TaskFamily f) {
  switch (f) {
    case TaskFamily::route_planning:
      return "rp";
    case TaskFamily::next_step:
      return "ns";
    case TaskFamily::turnpoint:
      return "tc";
    case TaskFamily::rule:
      return "ru";
  }
  return "xx";
}

constexpr int kMazeRetries = 32;

TaskInstance realize(const PlanItem& item, std::uint64_t seed) {
  for (int attempt = 0; attempt < kMazeRetries; ++attempt) {
    const std::uint64_t maze_seed =
        derive_seed(seed, (static_cast<std::uint64_t>(item.family) << 32) | item.index,
                    static_cast<std::uint64_t>(attempt));
    Maze maze;
    try {
      maze = generate(GenConfig::defaults(item.tier, maze_seed));
    } catch (const BudgetExhaustedError&) {
      continue;
    }
    Rng rng(derive_seed(maze_seed, 0x7a5cULL));
    std::optional<TaskInstance> inst;
    switch (item.family) {
      case TaskFamily::route_planning:
        inst = build_route_planning(maze);
        break;
      case TaskFamily::next_step:
        inst = build_next_step_sampled(maze, rng);
        break;
      case TaskFamily::turnpoint:
        inst = build_turnpoint_qa(maze, rng, item.tc);
        break;
      case TaskFamily::rule: {
        RuleOptions opts;
        opts.positive = item.rule_positive;
        inst = build_rule_qa(maze, rng, opts);
        break;
      }
    }
    if (!inst) continue;
    char id[32];
    std::snprintf(id, sizeof id, "%s-%05zu", id_prefix(item.family), item.index);
    inst->id = id;
    return *std::move(inst);
  }
  throw QuotaInfeasibleError(std::string("could not build ") +
                             std::string(to_string(item.family)) + " item " +
                             std::to_string(item.index) + " at tier " +
                             std::to_string(item.tier));
}

}  // namespace

Dataset build_dataset(const DatasetConfig& cfg) {
  if (cfg.tiers < 1) throw ConfigError("at least one tier is required");
  const std::size_t rp = (cfg.structured + 1) / 2;
  const std::size_t ns = cfg.structured - rp;
  const std::array<std::pair<TaskFamily, std::size_t>, 4> quotas = {{
      {TaskFamily::turnpoint, cfg.turnpoint},
      {TaskFamily::rule, cfg.rule},
      {TaskFamily::route_planning, rp},
      {TaskFamily::next_step, ns},
  }};

  // Sequential plan: fixes tiers, question forms and yes/no polarity so that
  // parallel generation cannot change the output.
  std::vector<PlanItem> plan;
  Rng plan_rng(derive_seed(cfg.seed, 0x91a4ULL));
  std::size_t yes_no_seen = 0;
  for (const auto& [family, quota] : quotas)
    for (std::size_t i = 0; i < quota; ++i) {
      PlanItem item{family, i, static_cast<int>(i % static_cast<std::size_t>(cfg.tiers)) + 1,
                    {}, std::nullopt};
      if (family == TaskFamily::turnpoint) {
        item.tc.form = plan_rng.coin() ? TurnpointTemplate::is_turn_point
                                       : TurnpointTemplate::turn_count;
        if (*item.tc.form == TurnpointTemplate::is_turn_point)
          item.tc.positive = (yes_no_seen++ % 2) == 0;
      } else if (family == TaskFamily::rule) {
        item.rule_positive = (i % 2) == 0;
      }
      plan.push_back(item);
    }

  std::vector<std::optional<TaskInstance>> built(plan.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::optional<std::string> error;
  unsigned threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, 64));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < plan.size(); i = next++) {
          try {
            built[i] = realize(plan[i], cfg.seed);
          } catch (const std::exception& e) {
            std::lock_guard lock(error_mutex);
            if (!error) error = e.what();
            next = plan.size();
          }
        }
      });
  }
  if (error) throw QuotaInfeasibleError(*error);

  Dataset ds;
  ds.manifest.seed = cfg.seed;
  ds.manifest.tiers = cfg.tiers;
  ds.instances.reserve(plan.size());
  for (auto& b : built) ds.instances.push_back(*std::move(b));
  for (const auto& [family, quota] : quotas)
    ds.manifest.family_counts[std::string(to_string(family))] = quota;

  // Stratified 8:1:1 split, shuffled per (family, tier).
  std::vector<Split> assigned(ds.instances.size(), Split::train);
  for (const auto& [family, quota] : quotas) {
    for (int tier = 1; tier <= cfg.tiers; ++tier) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < plan.size(); ++i)
        if (plan[i].family == family && plan[i].tier == tier) members.push_back(i);
      if (members.empty()) continue;
      Rng split_rng(derive_seed(cfg.seed, 0x5b11ULL,
                                static_cast<std::uint64_t>(family) * 64 +
                                    static_cast<std::uint64_t>(tier)));
      split_rng.shuffle(std::span<std::size_t>(members));
      const auto sizes = split_sizes(members.size());
      for (std::size_t j = 0; j < members.size(); ++j)
        assigned[members[j]] = j < sizes[0]               ? Split::train
                               : j < sizes[0] + sizes[1] ? Split::val
                                                         : Split::test;
      ds.manifest.strata.push_back({family, tier, sizes[0], sizes[1], sizes[2]});
    }
  }
  for (std::size_t i = 0; i < ds.instances.size(); ++i) {
    ds.instances[i].split = std::string(to_string(assigned[i]));
    ds.manifest.assignments.emplace_back(ds.instances[i].id, assigned[i]);
  }
  return ds;
}

void write_dataset(const Dataset& ds, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (Split s : {Split::train, Split::val, Split::test}) {
    const auto path = dir / (std::string(to_string(s)) + ".jsonl");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + path.string());
    for (const TaskInstance& inst : ds.instances)
      if (inst.split == to_string(s)) out << instance_to_json(inst).dump() << '\n';
  }
  std::ofstream manifest(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!manifest) throw FormatError("cannot write manifest.json");
  manifest << ds.manifest.to_json().dump(2) << '\n';
}

std::vector<TaskInstance> load_split(const std::filesystem::path& dir,
                                     std::string_view split) {
  std::vector<TaskInstance> out;
  std::vector<std::string> names;
  if (split.empty())
    names = {"train", "val", "test"};
  else
    names = {std::string(split)};
  for (const std::string& name : names)
    for (const Json& j : read_jsonl(dir / (name + ".jsonl")))
      out.push_back(instance_from_json(j));
  return out;
}

}  // namespace turnmaze
