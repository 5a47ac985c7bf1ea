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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "turnmaze/maze.hpp"
#include "turnmaze/tasks.hpp"

namespace turnmaze {

struct GlyphTable {
  std::string start = "S";
  std::string destination = "D";
  std::string misleading = "D";
  std::string turn_point = "T";
  std::string road = ".";
  std::string obstacle = "#";
  std::string user_icon = "@";

  static GlyphTable ascii() { return {}; }
  static GlyphTable emoji();
  /// "ascii" or "emoji".
  static std::optional<GlyphTable> named(std::string_view name);

  /// Empty when the table is usable; otherwise one message per problem
  /// (empty, whitespace-bearing or colliding glyphs).
  std::vector<std::string> problems() const;
  bool is_glyph(std::string_view token) const noexcept;

  friend bool operator==(const GlyphTable&, const GlyphTable&) = default;
};

Json glyphs_to_json(const GlyphTable& g);
GlyphTable glyphs_from_json(const Json& j);

enum class PromptStyle : std::uint8_t { cot, vot, star };

inline constexpr std::array<PromptStyle, 3> kPromptStyles = {
    PromptStyle::cot, PromptStyle::vot, PromptStyle::star};

std::string_view to_string(PromptStyle s) noexcept;
std::optional<PromptStyle> style_from_string(std::string_view s) noexcept;
/// Column label used in reports: "+CoT", "+VoT", "+Ours".
std::string_view style_label(PromptStyle s) noexcept;

/// Named prompt templates ("route_planning_star", "qa_context", ...).
/// Lines beginning with "## " are annotations and never reach a prompt.
class TemplateSet {
 public:
  static TemplateSet builtin();
  /// Built-in set with every *.txt file in `dir` overriding by stem.
  static TemplateSet load(const std::filesystem::path& dir);

  std::optional<std::string> get(std::string_view name) const;
  std::vector<std::string> names() const;
  void set(std::string name, std::string text);

 private:
  std::map<std::string, std::string, std::less<>> texts_;
};

/// One line per row, tokens separated by single spaces, newline-terminated.
/// The user icon, when `at` is given, overrides whatever the cell shows.
std::string render_map(const Maze& maze, std::optional<Coord> at,
                       const GlyphTable& glyphs = {});

/// Throws UnsupportedStyleError when the template set lacks the family/style.
std::string render_prompt(const TaskInstance& inst, PromptStyle style,
                          const GlyphTable& glyphs = {},
                          const TemplateSet& templates = TemplateSet::builtin());

struct StarStep {
  std::string description;
  Direction move = Direction::up;
  /// Rendered rows (newline-terminated); empty when the map was omitted.
  std::string map_after;

  friend bool operator==(const StarStep&, const StarStep&) = default;
};

struct StarSession {
  std::vector<StarStep> steps;
  std::optional<Trajectory> summary;

  Trajectory moves() const;

  friend bool operator==(const StarSession&, const StarSession&) = default;
};

/// Where the icon is drawn after each move of `moves` starting at `from`,
/// including invalid moves: an obstacle collision lands on the obstacle, a
/// boundary exit stays put. Also reports each move's status.
struct DriftStep {
  Coord position;
  MoveStatus status = MoveStatus::ok;
};
std::vector<DriftStep> drift(const Maze& maze, Coord from, const Trajectory& moves);

struct StepBlockOptions {
  /// Global 0-based index of the first move; step numbers start at index + 1.
  std::size_t first_index = 0;
  bool with_maps = true;
};

/// Step blocks for `moves` executed from `from`. Invalid moves are rendered
/// with an inline "(invalid move: ...)" marker.
std::vector<StarStep> build_step_blocks(const Maze& maze, Coord from,
                                        const Trajectory& moves,
                                        const StepBlockOptions& opts,
                                        const GlyphTable& glyphs = {});

std::string step_blocks_text(const std::vector<StarStep>& steps, std::size_t first_index,
                             const GlyphTable& glyphs = {});
std::string summary_line(const Trajectory& traj);

/// Throws InvalidTrajectoryError unless every move executes validly.
StarSession build_star_session(const Maze& maze, const Trajectory& traj,
                               const GlyphTable& glyphs = {});
std::string session_text(const StarSession& session, const GlyphTable& glyphs = {});
std::string render_star_session(const Maze& maze, const Trajectory& traj,
                                const GlyphTable& glyphs = {});

}  // namespace turnmaze
