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
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "turnmaze/maze.hpp"
#include "turnmaze/maze_io.hpp"
#include "turnmaze/prompts.hpp"
#include "turnmaze/tasks.hpp"

namespace turnmaze {

enum class ListFailure : std::uint8_t { no_list, invalid_token };

struct ListParseFailure {
  ListFailure reason = ListFailure::no_list;
  std::string token;  // offending token for invalid_token
};

/// Last bracketed list in `text`. Quotes are optional, words are
/// case-insensitive. Lists that look like coordinates are passed over when a
/// direction list appears earlier.
std::variant<Trajectory, ListParseFailure> parse_direction_list(std::string_view text);

/// Last option letter A-D in `text`, case-insensitive.
std::optional<char> parse_choice(std::string_view text);

/// parse_choice, but a later occurrence of a word-valued option text (a
/// direction, yes/no, true/false) also counts as choosing that option.
std::optional<char> parse_instance_choice(const TaskInstance& inst, std::string_view text);

enum class ResponseKind : std::uint8_t { direction_list, choice, star_session, unparseable };
std::string_view to_string(ResponseKind k) noexcept;

struct ParsedResponse {
  ResponseKind kind = ResponseKind::unparseable;
  std::optional<Trajectory> trajectory;
  std::optional<char> choice;
  std::optional<StarSession> session;
  std::vector<std::string> diagnostics;

  Json to_json() const;
};

/// Step blocks and the summary list. A session with a summary and no step
/// blocks is accepted; so are steps without maps (noted in diagnostics).
ParsedResponse parse_star_session(std::string_view text, const GlyphTable& glyphs = {});

ParsedResponse parse_route_response(std::string_view text);
ParsedResponse parse_choice_response(std::string_view text);

enum class ViolationKind : std::uint8_t {
  logical_inconsistency,
  constraint_violation,
  structural_corruption
};
std::string_view to_string(ViolationKind k) noexcept;

struct Violation {
  std::size_t step = 0;  // 1-based, as in the stepN markers
  ViolationKind kind = ViolationKind::logical_inconsistency;
  std::string detail;
};

struct ConsistencyReport {
  std::vector<Violation> violations;

  bool clean() const noexcept { return violations.empty(); }
  bool has(ViolationKind k) const noexcept;
  Json to_json() const;
};

ConsistencyReport check_consistency(const Maze& maze, const StarSession& session,
                                    const GlyphTable& glyphs = {});

}  // namespace turnmaze
