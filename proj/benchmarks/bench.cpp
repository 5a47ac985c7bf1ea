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

#include <benchmark/benchmark.h>

#include "turnmaze/generator.hpp"
#include "turnmaze/parser.hpp"
#include "turnmaze/prompts.hpp"
#include "turnmaze/solver.hpp"
#include "turnmaze/tasks.hpp"

namespace {

using namespace turnmaze;

void BM_Generate(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate(GenConfig::defaults(k, seed++)));
}
BENCHMARK(BM_Generate)->DenseRange(1, 6);

void BM_ShortestPath(benchmark::State& state) {
  const Maze m = generate(GenConfig::defaults(static_cast<int>(state.range(0)), 7));
  for (auto _ : state) benchmark::DoNotOptimize(shortest_path(m));
}
BENCHMARK(BM_ShortestPath)->DenseRange(1, 6);

void BM_RenderPrompt(benchmark::State& state) {
  const TaskInstance inst = build_route_planning(generate(GenConfig::defaults(4, 11)));
  const auto style = kPromptStyles[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(render_prompt(inst, style));
}
BENCHMARK(BM_RenderPrompt)->DenseRange(0, 2);

void BM_RenderSession(benchmark::State& state) {
  const Maze m = generate(GenConfig::defaults(6, 13));
  for (auto _ : state) benchmark::DoNotOptimize(render_star_session(m, m.optimal_path));
}
BENCHMARK(BM_RenderSession);

void BM_ParseSession(benchmark::State& state) {
  const Maze m = generate(GenConfig::defaults(6, 13));
  const std::string text = render_star_session(m, m.optimal_path);
  for (auto _ : state) benchmark::DoNotOptimize(parse_star_session(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseSession);

void BM_ParseRoute(benchmark::State& state) {
  const std::string text =
      "Let me think. First up, then right twice.\nThe complete path is: "
      "[\"up\", \"right\", \"right\", \"down\", \"down\", \"left\", \"down\", \"right\"]";
  for (auto _ : state) benchmark::DoNotOptimize(parse_route_response(text));
}
BENCHMARK(BM_ParseRoute);

}  // namespace

BENCHMARK_MAIN();
