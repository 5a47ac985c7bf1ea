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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "turnmaze/maze.hpp"

namespace turnmaze {

/// Insertion-ordered JSON, so records serialize with a stable field order.
using Json = nlohmann::ordered_json;

Json coord_to_json(Coord c);
Coord coord_from_json(const Json& j);

Json trajectory_to_json(const Trajectory& traj);
/// Throws FormatError on a non-direction entry.
Trajectory trajectory_from_json(const Json& j);

/// {"width","height","start","destination","misleading","obstacles",
///  "turn_points","optimal_path","tier","seed"}
Json maze_to_json(const Maze& maze);
Maze maze_from_json(const Json& j);

/// One compact line, no trailing newline.
std::string maze_to_line(const Maze& maze);

/// Throws FormatError with the line number on malformed input.
std::vector<Json> read_jsonl(const std::filesystem::path& path);
void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& records);

}  // namespace turnmaze
