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

#include "turnmaze/sdpo.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "turnmaze/errors.hpp"
#include "turnmaze/metrics.hpp"
#include "turnmaze/solver.hpp"

namespace turnmaze {

std::string_view to_string(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::obstacle_collision:
      return "obstacle_collision";
    case ErrorKind::boundary_exit:
      return "boundary_exit";
    case ErrorKind::nonoptimal_branch:
      return "nonoptimal_branch";
    case ErrorKind::premature_stop:
      return "premature_stop";
    case ErrorKind::wrong_turn_at_tp:
      return "wrong_turn_at_tp";
  }
  return "?";
}

std::optional<ErrorKind> error_kind_from_string(std::string_view s) noexcept {
  for (ErrorKind k : kErrorKinds)
    if (s == to_string(k)) return k;
  return std::nullopt;
}

std::optional<std::size_t> divergence_index(const Trajectory& output, const Trajectory& truth) {
  const std::size_t n = std::min(output.size(), truth.size());
  for (std::size_t i = 0; i < n; ++i)
    if (output[i] != truth[i]) return i;
  if (output.size() != truth.size()) return n;
  return std::nullopt;
}

namespace {

Trajectory slice(const Trajectory& t, std::size_t from, std::size_t len) {
  if (from >= t.size()) return {};
  const std::size_t to = std::min(t.size(), from + len);
  return Trajectory(t.begin() + static_cast<std::ptrdiff_t>(from),
                    t.begin() + static_cast<std::ptrdiff_t>(to));
}

bool is_turn_point(const Maze& maze, Coord c) {
  return std::find(maze.turn_points.begin(), maze.turn_points.end(), c) !=
         maze.turn_points.end();
}

}  // namespace

Segments extract_segments(const Trajectory& output, const Trajectory& truth, std::size_t e,
                          std::size_t len) {
  return {slice(output, e, len), slice(truth, e, len)};
}

Json PreferencePair::to_json() const {
  Json j;
  j["prompt"] = prompt_context;
  j["chosen"] = chosen;
  j["rejected"] = rejected;
  j["maze_ref"] = maze_ref;
  j["instance_id"] = instance_id;
  j["divergence_index"] = divergence_index;
  j["segment_len"] = segment_len;
  j["error_kind"] = error_kind ? Json(std::string(to_string(*error_kind))) : Json(nullptr);
  j["chosen_moves"] = trajectory_to_json(chosen_moves);
  j["rejected_moves"] = trajectory_to_json(rejected_moves);
  return j;
}

PreferencePair PreferencePair::from_json(const Json& j) {
  try {
    PreferencePair p;
    p.prompt_context = j.at("prompt").get<std::string>();
    p.chosen = j.at("chosen").get<std::string>();
    p.rejected = j.at("rejected").get<std::string>();
    p.maze_ref = j.value("maze_ref", "");
    p.instance_id = j.value("instance_id", "");
    p.divergence_index = j.value("divergence_index", std::size_t{0});
    p.segment_len = j.value("segment_len", kDefaultSegmentLength);
    if (auto it = j.find("error_kind"); it != j.end() && it->is_string())
      p.error_kind = error_kind_from_string(it->get<std::string>());
    if (auto it = j.find("chosen_moves"); it != j.end()) p.chosen_moves = trajectory_from_json(*it);
    if (auto it = j.find("rejected_moves"); it != j.end())
      p.rejected_moves = trajectory_from_json(*it);
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad preference pair: ") + e.what());
  }
}

ErrorKind classify_divergence(const Maze& maze, const Trajectory& output,
                              const Trajectory& truth, std::size_t e) {
  if (e >= output.size()) return ErrorKind::premature_stop;
  const Trajectory prefix(output.begin(), output.begin() + static_cast<std::ptrdiff_t>(e));
  const std::vector<Coord> positions = walk(maze, maze.start, prefix);
  const Coord at = positions.back();
  const MoveResult move = apply_move(maze, at, output[e]);
  if (move.status == MoveStatus::boundary_exit) return ErrorKind::boundary_exit;
  if (move.status == MoveStatus::obstacle_collision) return ErrorKind::obstacle_collision;
  if (e < truth.size() && (is_turn_point(maze, at) || maze.passable_neighbours(at) >= 3))
    return ErrorKind::wrong_turn_at_tp;
  return ErrorKind::nonoptimal_branch;
}

std::optional<PreferencePair> build_pair(const TaskInstance& inst, const Trajectory& output,
                                         const PairOptions& opts) {
  if (inst.family != TaskFamily::route_planning)
    throw ConfigError("preference pairs need a route-planning instance, got " +
                      std::string(to_string(inst.family)));
  if (opts.segment_len == 0) throw ConfigError("segment length must be at least 1");
  const Trajectory truth = route_answer(inst);
  const auto e = divergence_index(output, truth);
  // An output that only runs on past the end of the truth has no chosen
  // segment to contrast with.
  if (!e || *e >= truth.size()) return std::nullopt;
  const Maze& maze = inst.maze;
  const GlyphTable& g = opts.glyphs;

  PreferencePair pair;
  pair.maze_ref = maze_id(maze);
  pair.instance_id = inst.id;
  pair.divergence_index = *e;
  pair.segment_len = opts.segment_len;
  pair.error_kind = classify_divergence(maze, output, truth, *e);

  const Trajectory prefix(truth.begin(), truth.begin() + static_cast<std::ptrdiff_t>(*e));
  const auto prefix_blocks = build_step_blocks(maze, maze.start, prefix,
                                               {0, opts.with_maps}, g);
  pair.prompt_context = render_prompt(inst, PromptStyle::star, g) + "\n" +
                        step_blocks_text(prefix_blocks, 0, g);

  const Segments seg = extract_segments(output, truth, *e, opts.segment_len);
  pair.chosen_moves = seg.chosen;
  pair.rejected_moves = seg.rejected;
  const Coord from = walk(maze, maze.start, prefix).back();
  auto render_segment = [&](const Trajectory& moves, const Trajectory& whole) {
    std::string text = step_blocks_text(
        build_step_blocks(maze, from, moves, {*e, opts.with_maps}, g), *e, g);
    if (*e + moves.size() >= whole.size()) text += summary_line(whole);
    return text;
  };
  pair.chosen = render_segment(seg.chosen, truth);
  pair.rejected = render_segment(seg.rejected, output);
  return pair;
}

namespace {

struct Site {
  std::size_t index;
  Direction dir;
};

template <typename T>
const T& choose(const std::vector<T>& items, Rng& rng) {
  return items[rng.below(items.size())];
}

Trajectory replace_at(Trajectory t, std::size_t i, Direction d) {
  t[i] = d;
  return t;
}

}  // namespace

Trajectory synthesize_negative(const Maze& maze, const Trajectory& truth, ErrorKind kind,
                               Rng& rng) {
  const std::vector<Coord> positions = walk(maze, maze.start, truth);
  if (positions.size() != truth.size() + 1)
    throw InvalidTrajectoryError("ground truth does not execute");
  const std::size_t T = truth.size();

  switch (kind) {
    case ErrorKind::obstacle_collision:
    case ErrorKind::boundary_exit: {
      const MoveStatus want = kind == ErrorKind::obstacle_collision
                                  ? MoveStatus::obstacle_collision
                                  : MoveStatus::boundary_exit;
      std::vector<Site> sites;
      for (std::size_t i = 0; i < T; ++i)
        for (Direction d : kDirections)
          if (apply_move(maze, positions[i], d).status == want) sites.push_back({i, d});
      if (sites.empty())
        throw InfeasibleKindError("no move along the path can produce " +
                                  std::string(to_string(kind)));
      const Site s = choose(sites, rng);
      return replace_at(truth, s.index, s.dir);
    }
    case ErrorKind::nonoptimal_branch: {
      std::vector<Site> sites;
      for (std::size_t i = 0; i < T; ++i)
        for (Direction d : kDirections)
          if (d != truth[i] && apply_move(maze, positions[i], d).ok()) sites.push_back({i, d});
      if (sites.empty()) throw InfeasibleKindError("no side cell to detour through");
      const Site s = choose(sites, rng);
      Trajectory out(truth.begin(), truth.begin() + static_cast<std::ptrdiff_t>(s.index));
      out.push_back(s.dir);
      out.push_back(opposite(s.dir));
      out.insert(out.end(), truth.begin() + static_cast<std::ptrdiff_t>(s.index), truth.end());
      return out;
    }
    case ErrorKind::premature_stop: {
      if (T < 2) throw InfeasibleKindError("path too short to stop early");
      const std::size_t cut = 1 + rng.below(T - 1);
      return Trajectory(truth.begin(), truth.begin() + static_cast<std::ptrdiff_t>(cut));
    }
    case ErrorKind::wrong_turn_at_tp: {
      std::vector<Site> forward, backward;
      for (std::size_t i = 0; i < T; ++i) {
        if (!is_turn_point(maze, positions[i])) continue;
        const Trajectory prefix(truth.begin(), truth.begin() + static_cast<std::ptrdiff_t>(i));
        const std::vector<Direction> good = optimal_next(maze, prefix);
        for (Direction d : kDirections) {
          if (std::find(good.begin(), good.end(), d) != good.end()) continue;
          if (!apply_move(maze, positions[i], d).ok()) continue;
          const bool back = i > 0 && d == opposite(truth[i - 1]);
          (back ? backward : forward).push_back({i, d});
        }
      }
      const std::vector<Site>& pool = forward.empty() ? backward : forward;
      if (pool.empty()) throw InfeasibleKindError("no valid wrong turn at any turn point");
      const Site s = choose(pool, rng);
      return replace_at(truth, s.index, s.dir);
    }
  }
  throw InfeasibleKindError("unknown error kind");
}

bool exhibits_kind(const Maze& maze, const Trajectory& truth, const Trajectory& negative,
                   ErrorKind kind) {
  if (negative == truth) return false;
  const ExecutionTrace trace = execute(maze, negative);
  const RouteScore score = score_route(maze, negative);
  switch (kind) {
    case ErrorKind::obstacle_collision:
      return trace.failure == StepFailure::obstacle_collision;
    case ErrorKind::boundary_exit:
      return trace.failure == StepFailure::boundary_exit;
    case ErrorKind::nonoptimal_branch:
      return trace.fully_valid() && trace.reached_destination &&
             negative.size() > score.optimal_steps && !score.sr && score.cr == 1.0;
    case ErrorKind::premature_stop:
      return negative.size() < truth.size() &&
             std::equal(negative.begin(), negative.end(), truth.begin()) &&
             !trace.reached_destination;
    case ErrorKind::wrong_turn_at_tp: {
      const auto e = divergence_index(negative, truth);
      if (!e || *e >= negative.size() || *e >= truth.size()) return false;
      const Coord at = trace.positions.at(*e);
      if (!is_turn_point(maze, at) || !apply_move(maze, at, negative[*e]).ok()) return false;
      const Trajectory prefix(negative.begin(), negative.begin() + static_cast<std::ptrdiff_t>(*e));
      const std::vector<Direction> good = optimal_next(maze, prefix);
      return std::find(good.begin(), good.end(), negative[*e]) == good.end() && !score.sr;
    }
  }
  return false;
}

Json sft_record(const TaskInstance& inst, const GlyphTable& glyphs) {
  if (inst.family != TaskFamily::route_planning)
    throw ConfigError("SFT sessions need a route-planning instance");
  Json j;
  j["prompt"] = render_prompt(inst, PromptStyle::star, glyphs);
  j["completion"] = render_star_session(inst.maze, route_answer(inst), glyphs);
  j["instance_id"] = inst.id;
  j["maze_ref"] = maze_id(inst.maze);
  return j;
}

}  // namespace turnmaze
