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

#include "turnmaze/prompts.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "turnmaze/errors.hpp"

namespace turnmaze {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kBuiltinTemplates[];
extern const unsigned kBuiltinTemplateCount;
}  // namespace detail

GlyphTable GlyphTable::emoji() {
  GlyphTable g;
  g.start = "\xF0\x9F\x9A\xA9";        // triangular flag
  g.destination = "\xF0\x9F\x8F\x81";  // chequered flag
  g.misleading = g.destination;
  g.turn_point = "\xF0\x9F\x94\xB6";  // large orange diamond
  g.road = "\xE2\xAC\x9C";            // white square
  g.obstacle = "\xE2\xAC\x9B";        // black square
  g.user_icon = "\xF0\x9F\xA4\x96";   // robot
  return g;
}

std::optional<GlyphTable> GlyphTable::named(std::string_view name) {
  if (name == "ascii") return ascii();
  if (name == "emoji") return emoji();
  return std::nullopt;
}

std::vector<std::string> GlyphTable::problems() const {
  const std::pair<std::string_view, const std::string*> all[] = {
      {"start", &start},       {"destination", &destination}, {"misleading", &misleading},
      {"turn_point", &turn_point}, {"road", &road},           {"obstacle", &obstacle},
      {"user_icon", &user_icon}};
  std::vector<std::string> out;
  for (const auto& [name, g] : all) {
    if (g->empty()) out.push_back(std::string(name) + " glyph is empty");
    if (g->find_first_of(" \t\r\n[]") != std::string::npos)
      out.push_back(std::string(name) + " glyph contains whitespace or brackets");
  }
  for (std::size_t i = 0; i < std::size(all); ++i)
    for (std::size_t j = i + 1; j < std::size(all); ++j) {
      const bool allowed = all[i].first == "destination" && all[j].first == "misleading";
      if (!allowed && *all[i].second == *all[j].second)
        out.push_back(std::string(all[i].first) + " and " + std::string(all[j].first) +
                      " share a glyph");
    }
  return out;
}

bool GlyphTable::is_glyph(std::string_view t) const noexcept {
  return t == start || t == destination || t == misleading || t == turn_point ||
         t == road || t == obstacle || t == user_icon;
}

Json glyphs_to_json(const GlyphTable& g) {
  return Json{{"start", g.start},       {"destination", g.destination},
              {"misleading", g.misleading}, {"turn_point", g.turn_point},
              {"road", g.road},         {"obstacle", g.obstacle},
              {"user_icon", g.user_icon}};
}

GlyphTable glyphs_from_json(const Json& j) {
  if (j.is_string()) {
    if (auto g = GlyphTable::named(j.get<std::string>())) return *g;
    throw ConfigError("unknown glyph table " + j.get<std::string>());
  }
  if (!j.is_object()) throw ConfigError("glyph table must be a name or an object");
  GlyphTable g;
  auto read = [&](const char* key, std::string& field) {
    if (auto it = j.find(key); it != j.end()) field = it->get<std::string>();
  };
  read("start", g.start);
  read("destination", g.destination);
  g.misleading = g.destination;
  read("misleading", g.misleading);
  read("turn_point", g.turn_point);
  read("road", g.road);
  read("obstacle", g.obstacle);
  read("user_icon", g.user_icon);
  if (auto p = g.problems(); !p.empty()) throw ConfigError("glyph table: " + p.front());
  return g;
}

std::string_view to_string(PromptStyle s) noexcept {
  switch (s) {
    case PromptStyle::cot:
      return "cot";
    case PromptStyle::vot:
      return "vot";
    case PromptStyle::star:
      return "star";
  }
  return "?";
}

std::optional<PromptStyle> style_from_string(std::string_view s) noexcept {
  for (PromptStyle p : kPromptStyles)
    if (s == to_string(p)) return p;
  return std::nullopt;
}

std::string_view style_label(PromptStyle s) noexcept {
  switch (s) {
    case PromptStyle::cot:
      return "+CoT";
    case PromptStyle::vot:
      return "+VoT";
    case PromptStyle::star:
      return "+Ours";
  }
  return "?";
}

namespace {

std::string strip_annotations(std::string_view text) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl + 1;
    const std::string_view line = text.substr(pos, end - pos);
    if (!line.starts_with("## ")) out.append(line);
    pos = end;
  }
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out;
}

}  // namespace

TemplateSet TemplateSet::builtin() {
  TemplateSet set;
  for (unsigned i = 0; i < detail::kBuiltinTemplateCount; ++i)
    set.set(std::string(detail::kBuiltinTemplates[i].first),
            std::string(detail::kBuiltinTemplates[i].second));
  return set;
}

TemplateSet TemplateSet::load(const std::filesystem::path& dir) {
  TemplateSet set = builtin();
  if (!std::filesystem::is_directory(dir))
    throw ConfigError("template directory not found: " + dir.string());
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    set.set(entry.path().stem().string(), buf.str());
  }
  return set;
}

std::optional<std::string> TemplateSet::get(std::string_view name) const {
  auto it = texts_.find(name);
  if (it == texts_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> TemplateSet::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : texts_) out.push_back(k);
  return out;
}

void TemplateSet::set(std::string name, std::string text) {
  texts_[std::move(name)] = strip_annotations(text);
}

std::string render_map(const Maze& maze, std::optional<Coord> at, const GlyphTable& g) {
  std::vector<std::uint8_t> tp(maze.area(), 0), mis(maze.area(), 0);
  for (Coord c : maze.turn_points)
    if (maze.in_bounds(c)) tp[maze.index(c)] = 1;
  for (Coord c : maze.misleading)
    if (maze.in_bounds(c)) mis[maze.index(c)] = 1;
  std::string out;
  for (int r = 0; r < maze.height(); ++r) {
    for (int c = 0; c < maze.width(); ++c) {
      const Coord cell{r, c};
      const std::size_t i = maze.index(cell);
      const std::string* glyph = &g.road;
      if (at && *at == cell)
        glyph = &g.user_icon;
      else if (cell == maze.start)
        glyph = &g.start;
      else if (cell == maze.destination)
        glyph = &g.destination;
      else if (mis[i])
        glyph = &g.misleading;
      else if (maze.is_obstacle(cell))
        glyph = &g.obstacle;
      else if (tp[i])
        glyph = &g.turn_point;
      if (c > 0) out += ' ';
      out += *glyph;
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string_view template_prefix(TaskFamily f) {
  switch (f) {
    case TaskFamily::route_planning:
      return "route_planning";
    case TaskFamily::next_step:
      return "next_step";
    case TaskFamily::turnpoint:
    case TaskFamily::rule:
      return "qa";
  }
  return "";
}

struct Slot {
  std::string value;
  bool block = false;  // starts on its own line
};

// Single left-to-right pass; inserted values are never rescanned and unknown
// bracketed text is copied through.
std::string substitute(std::string_view text, const std::map<std::string, Slot, std::less<>>& slots) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t open = text.find('[', pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, open - pos));
    const std::size_t close = text.find(']', open + 1);
    if (close == std::string_view::npos) {
      out.append(text.substr(open));
      break;
    }
    const std::string_view key = text.substr(open + 1, close - open - 1);
    auto it = slots.find(key);
    if (it == slots.end()) {
      out.append(text.substr(open, close - open + 1));
    } else if (it->second.block) {
      while (!out.empty() && out.back() == ' ') out.pop_back();
      out += '\n';
      out += it->second.value;
    } else {
      out += it->second.value;
    }
    pos = close + 1;
  }
  return out;
}

std::string options_text(const TaskInstance& inst) {
  std::string out;
  for (const auto& [letter, text] : instance_options(inst)) {
    if (!out.empty()) out += ", ";
    out += letter;
    out += ": ";
    out += text;
  }
  return out;
}

std::string chomp(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

}  // namespace

std::string render_prompt(const TaskInstance& inst, PromptStyle style, const GlyphTable& g,
                          const TemplateSet& templates) {
  const std::string prefix(template_prefix(inst.family));
  const auto context_tmpl = templates.get(prefix + "_context");
  const auto body_tmpl = templates.get(prefix + "_" + std::string(to_string(style)));
  if (!context_tmpl || !body_tmpl)
    throw UnsupportedStyleError("no " + std::string(to_string(style)) + " template for " +
                                std::string(to_string(inst.family)));

  std::map<std::string, Slot, std::less<>> slots = {
      {"START", {g.start}},   {"DEST", {g.destination}},   {"TP", {g.turn_point}},
      {"ROAD", {g.road}},     {"OBST", {g.obstacle}},      {"USER_ICON", {g.user_icon}},
  };
  const std::string grid = chomp(render_map(inst.maze, std::nullopt, g));
  slots["Grid Layout"] = {grid, true};
  slots["Full Grid Layout"] = {grid, true};
  if (auto def = templates.get("map_definition"))
    slots["Map Definition"] = {substitute(*def, slots)};
  if (inst.family == TaskFamily::next_step)
    slots["Path List"] = {to_string(next_step_prefix(inst))};
  if (inst.is_choice()) slots["Options"] = {options_text(inst)};
  if (auto q = inst.payload.find("question"); q != inst.payload.end() && q->is_string())
    slots["Question"] = {q->get<std::string>()};

  const std::string context = chomp(substitute(*context_tmpl, slots));
  slots["Same Context as CoT"] = {context};
  return chomp(substitute(*body_tmpl, slots));
}

Trajectory StarSession::moves() const {
  Trajectory out;
  out.reserve(steps.size());
  for (const StarStep& s : steps) out.push_back(s.move);
  return out;
}

std::vector<DriftStep> drift(const Maze& maze, Coord from, const Trajectory& moves) {
  std::vector<DriftStep> out;
  out.reserve(moves.size());
  Coord pos = from;
  for (Direction d : moves) {
    const Coord target = pos.step(d);
    DriftStep s{pos, MoveStatus::ok};
    if (!maze.in_bounds(target)) {
      s.status = MoveStatus::boundary_exit;
    } else {
      if (maze.is_obstacle(target)) s.status = MoveStatus::obstacle_collision;
      pos = target;
      s.position = pos;
    }
    out.push_back(s);
  }
  return out;
}

std::vector<StarStep> build_step_blocks(const Maze& maze, Coord from, const Trajectory& moves,
                                        const StepBlockOptions& opts, const GlyphTable& g) {
  std::vector<StarStep> out;
  out.reserve(moves.size());
  std::vector<std::uint8_t> tp(maze.area(), 0);
  for (Coord c : maze.turn_points)
    if (maze.in_bounds(c)) tp[maze.index(c)] = 1;
  const std::vector<DriftStep> path = drift(maze, from, moves);
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const DriftStep& s = path[i];
    StarStep step;
    step.move = moves[i];
    std::string text;
    if (opts.first_index + i == 0) text = "from the starting point, ";
    text += "move ";
    text += to_string(moves[i]);
    if (s.status != MoveStatus::ok) {
      text += s.status == MoveStatus::obstacle_collision
                  ? " into an obstacle. (invalid move: obstacle collision)"
                  : " off the map. (invalid move: boundary exit)";
    } else if (s.position == maze.destination) {
      text += " to reach the destination.";
    } else if (tp[maze.index(s.position)]) {
      text += " to the next turn point.";
    } else {
      text += " to the next cell.";
    }
    step.description = std::move(text);
    if (opts.with_maps) step.map_after = render_map(maze, s.position, g);
    out.push_back(std::move(step));
  }
  return out;
}

std::string step_blocks_text(const std::vector<StarStep>& steps, std::size_t first_index,
                             const GlyphTable& g) {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string n = std::to_string(first_index + i + 1);
    out += "step" + n + ": " + steps[i].description + "\n";
    if (!steps[i].map_after.empty()) {
      out += "After step" + n + ": current position: " + g.user_icon + "\n";
      out += steps[i].map_after;
    }
  }
  return out;
}

std::string summary_line(const Trajectory& traj) {
  return "Summary of steps: The shortest path is: " + to_string(traj) + "\n";
}

StarSession build_star_session(const Maze& maze, const Trajectory& traj, const GlyphTable& g) {
  const ExecutionTrace trace = execute(maze, traj);
  if (!trace.fully_valid())
    throw InvalidTrajectoryError("move " + std::to_string(*trace.first_invalid + 1) +
                                 " is invalid: " + std::string(to_string(trace.failure)));
  StarSession session;
  session.steps = build_step_blocks(maze, maze.start, traj, {}, g);
  session.summary = traj;
  return session;
}

std::string session_text(const StarSession& session, const GlyphTable& g) {
  std::string out = step_blocks_text(session.steps, 0, g);
  if (session.summary) out += summary_line(*session.summary);
  return out;
}

std::string render_star_session(const Maze& maze, const Trajectory& traj, const GlyphTable& g) {
  return session_text(build_star_session(maze, traj, g), g);
}

}  // namespace turnmaze
