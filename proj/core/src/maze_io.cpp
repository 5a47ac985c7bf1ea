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

#include "turnmaze/maze_io.hpp"

#include <fstream>

#include "turnmaze/errors.hpp"

namespace turnmaze {

Json coord_to_json(Coord c) { return Json::array({c.row, c.col}); }

Coord coord_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer())
    throw FormatError("expected [row, col], got " + j.dump());
  return {j[0].get<int>(), j[1].get<int>()};
}

Json trajectory_to_json(const Trajectory& traj) {
  Json out = Json::array();
  for (Direction d : traj) out.push_back(std::string(to_string(d)));
  return out;
}

Trajectory trajectory_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("expected a list of directions");
  Trajectory out;
  out.reserve(j.size());
  for (const Json& e : j) {
    if (!e.is_string()) throw FormatError("direction must be a string: " + e.dump());
    const auto d = direction_from_word(e.get<std::string>());
    if (!d) throw FormatError("unknown direction: " + e.get<std::string>());
    out.push_back(*d);
  }
  return out;
}

namespace {

Json coords_to_json(const std::vector<Coord>& cs) {
  Json out = Json::array();
  for (Coord c : cs) out.push_back(coord_to_json(c));
  return out;
}

std::vector<Coord> coords_from_json(const Json& j, const char* field) {
  if (!j.is_array()) throw FormatError(std::string(field) + " must be a list");
  std::vector<Coord> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(coord_from_json(e));
  return out;
}

constexpr int kMaxSide = 1024;

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string("missing field \"") + name + "\"");
  return *it;
}

}  // namespace

Json maze_to_json(const Maze& maze) {
  Json j;
  j["width"] = maze.width();
  j["height"] = maze.height();
  j["start"] = coord_to_json(maze.start);
  j["destination"] = coord_to_json(maze.destination);
  j["misleading"] = coords_to_json(maze.misleading);
  j["obstacles"] = coords_to_json(maze.obstacles());
  j["turn_points"] = coords_to_json(maze.turn_points);
  j["optimal_path"] = trajectory_to_json(maze.optimal_path);
  j["tier"] = maze.tier;
  j["seed"] = maze.seed;
  return j;
}

Maze maze_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("maze record must be an object");
  try {
    const int width = field(j, "width").get<int>();
    const int height = field(j, "height").get<int>();
    if (width <= 0 || height <= 0 || width > kMaxSide || height > kMaxSide)
      throw FormatError("maze dimensions out of range");
    Maze m(width, height);
    for (Coord c : coords_from_json(field(j, "obstacles"), "obstacles")) {
      if (!m.in_bounds(c)) throw FormatError("obstacle out of bounds: " + to_string(c));
      m.set_obstacle(c, true);
    }
    m.start = coord_from_json(field(j, "start"));
    m.destination = coord_from_json(field(j, "destination"));
    if (!m.in_bounds(m.start) || !m.in_bounds(m.destination))
      throw FormatError("start or destination out of bounds");
    m.misleading = coords_from_json(field(j, "misleading"), "misleading");
    m.turn_points = coords_from_json(field(j, "turn_points"), "turn_points");
    m.optimal_path = trajectory_from_json(field(j, "optimal_path"));
    m.tier = field(j, "tier").get<int>();
    m.seed = field(j, "seed").get<std::uint64_t>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad maze record: ") + e.what());
  } catch (const ConfigError& e) {
    throw FormatError(std::string("bad maze record: ") + e.what());
  }
}

std::string maze_to_line(const Maze& maze) { return maze_to_json(maze).dump(); }

std::vector<Json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<Json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  for (const Json& r : records) out << r.dump() << '\n';
}

}  // namespace turnmaze
