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

#include <algorithm>
#include <deque>
#include <string>
#include <variant>

#include "cli.hpp"
#include "turnmaze/errors.hpp"
#include "turnmaze/generator.hpp"
#include "turnmaze/parser.hpp"
#include "turnmaze/sdpo.hpp"
#include "turnmaze/solver.hpp"
#include "turnmaze/tasks.hpp"

namespace turnmaze::cli {
namespace {

// Plain BFS on cells, written without the solver module.
int bfs_length(const Maze& m) {
  std::vector<int> dist(static_cast<std::size_t>(m.width() * m.height()), -1);
  auto idx = [&](Coord c) { return static_cast<std::size_t>(c.row * m.width() + c.col); };
  std::deque<Coord> q{m.start};
  dist[idx(m.start)] = 0;
  while (!q.empty()) {
    const Coord c = q.front();
    q.pop_front();
    if (c == m.destination) return dist[idx(c)];
    for (Direction d : kDirections) {
      const Coord n = c.step(d);
      if (n.row < 0 || n.col < 0 || n.row >= m.height() || n.col >= m.width()) continue;
      if (m.is_obstacle(n) || dist[idx(n)] >= 0) continue;
      dist[idx(n)] = dist[idx(c)] + 1;
      q.push_back(n);
    }
  }
  return -1;
}

CheckResult check(std::string name, std::size_t bad, std::size_t total) {
  return {std::move(name), bad == 0, std::to_string(total - bad) + "/" + std::to_string(total)};
}

}  // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::vector<Maze> mazes;
  for (std::size_t i = 0; i < 36; ++i)
    mazes.push_back(generate(GenConfig::defaults(static_cast<int>(i % 6) + 1, derive_seed(seed, i))));

  std::size_t bad = 0;
  for (const Maze& m : mazes) {
    const PathSolution sol = shortest_path(m);
    const ExecutionTrace tr = execute(m, sol.path);
    if (static_cast<int>(sol.length) != bfs_length(m) || !tr.fully_valid() || !tr.reached_destination)
      ++bad;
  }
  out.push_back(check("solver matches BFS", bad, mazes.size()));

  bad = 0;
  for (const Maze& m : mazes) {
    const PathSolution sol = shortest_path(m);
    const DifficultyTier t{m.tier};
    const auto turns = static_cast<int>(count_turns(sol.path));
    if (!sol.is_unique || turns < t.min_turns() || turns > t.max_turns() || !validate_maze(m).empty())
      ++bad;
  }
  out.push_back(check("generator tier and uniqueness", bad, mazes.size()));

  bad = 0;
  for (const Maze& m : mazes)
    if (maze_from_json(Json::parse(maze_to_line(m))) != m) ++bad;
  out.push_back(check("maze JSON round-trip", bad, mazes.size()));

  bad = 0;
  for (const Maze& m : mazes) {
    const Trajectory truth = shortest_path(m).path;
    const auto parsed = parse_direction_list("The complete path is: " + to_string(truth));
    const auto* traj = std::get_if<Trajectory>(&parsed);
    if (!traj || *traj != truth) ++bad;
  }
  out.push_back(check("direction list round-trip", bad, mazes.size()));

  bad = 0;
  for (const Maze& m : mazes) {
    const Trajectory truth = shortest_path(m).path;
    const ParsedResponse p = parse_star_session(render_star_session(m, truth));
    if (!p.session || p.session->moves() != truth || !p.session->summary ||
        !check_consistency(m, *p.session).clean())
      ++bad;
  }
  out.push_back(check("STAR session round-trip", bad, mazes.size()));

  bad = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < mazes.size(); ++i) {
    const Trajectory truth = shortest_path(mazes[i]).path;
    for (ErrorKind k : kErrorKinds) {
      Rng rng(derive_seed(seed, i, static_cast<std::uint64_t>(k)));
      try {
        const Trajectory neg = synthesize_negative(mazes[i], truth, k, rng);
        ++total;
        if (!exhibits_kind(mazes[i], truth, neg, k)) ++bad;
      } catch (const InfeasibleKindError&) {
      }
    }
  }
  out.push_back(check("negative synthesis", bad, total));

  DatasetConfig dc;
  dc.turnpoint = 24;
  dc.rule = 24;
  dc.structured = 24;
  dc.seed = seed;
  const Dataset ds = build_dataset(dc);
  bad = 0;
  for (const TaskInstance& inst : ds.instances)
    if (rederive_answer_key(inst) != inst.answer_key) ++bad;
  out.push_back(check("dataset answer keys", bad, ds.instances.size()));
  return out;
}

}  // namespace turnmaze::cli
