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
#include <optional>
#include <string>
#include <string_view>

#include "turnmaze/maze.hpp"
#include "turnmaze/maze_io.hpp"
#include "turnmaze/prompts.hpp"
#include "turnmaze/rng.hpp"
#include "turnmaze/tasks.hpp"

namespace turnmaze {

enum class ErrorKind : std::uint8_t {
  obstacle_collision,
  boundary_exit,
  nonoptimal_branch,
  premature_stop,
  wrong_turn_at_tp
};

inline constexpr std::array<ErrorKind, 5> kErrorKinds = {
    ErrorKind::obstacle_collision, ErrorKind::boundary_exit, ErrorKind::nonoptimal_branch,
    ErrorKind::premature_stop, ErrorKind::wrong_turn_at_tp};

std::string_view to_string(ErrorKind k) noexcept;
std::optional<ErrorKind> error_kind_from_string(std::string_view s) noexcept;

inline constexpr std::size_t kDefaultSegmentLength = 3;

/// First index where the sequences differ; min length when one is a strict
/// prefix of the other; nullopt when they are equal.
std::optional<std::size_t> divergence_index(const Trajectory& output, const Trajectory& truth);

struct Segments {
  Trajectory rejected;
  Trajectory chosen;
};

/// rejected = output[e, e+L), chosen = truth[e, e+L), each clipped at its end.
Segments extract_segments(const Trajectory& output, const Trajectory& truth, std::size_t e,
                          std::size_t len);

struct PairOptions {
  std::size_t segment_len = kDefaultSegmentLength;
  bool with_maps = true;
  GlyphTable glyphs;
};

struct PreferencePair {
  std::string maze_ref;
  std::string instance_id;
  std::string prompt_context;
  std::string chosen;
  std::string rejected;
  std::size_t divergence_index = 0;
  std::size_t segment_len = kDefaultSegmentLength;
  std::optional<ErrorKind> error_kind;
  Trajectory chosen_moves;
  Trajectory rejected_moves;

  /// {"prompt", "chosen", "rejected", ...metadata}.
  Json to_json() const;
  static PreferencePair from_json(const Json& j);
};

/// Labels a divergence by what the output does at e.
ErrorKind classify_divergence(const Maze& maze, const Trajectory& output,
                              const Trajectory& truth, std::size_t e);

/// nullopt when `output` equals the instance's answer or only extends it (no
/// chosen segment exists). The instance must be route planning (ConfigError
/// otherwise).
std::optional<PreferencePair> build_pair(const TaskInstance& inst, const Trajectory& output,
                                         const PairOptions& opts = {});

/// Throws InfeasibleKindError when the maze offers no such perturbation.
Trajectory synthesize_negative(const Maze& maze, const Trajectory& truth, ErrorKind kind,
                               Rng& rng);

/// The per-kind predicate a synthesized negative must satisfy.
bool exhibits_kind(const Maze& maze, const Trajectory& truth, const Trajectory& negative,
                   ErrorKind kind);

/// Ground-truth STAR session for SFT: {"prompt", "completion", ...}.
Json sft_record(const TaskInstance& inst, const GlyphTable& glyphs = {});

}  // namespace turnmaze
