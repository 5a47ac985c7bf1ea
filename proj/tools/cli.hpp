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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "turnmaze/maze_io.hpp"
#include "turnmaze/prompts.hpp"

namespace turnmaze::cli {

/// Settings shared by every subcommand. Precedence: command-line flags, then
/// the config file, then these defaults.
struct GlobalConfig {
  std::string glyphs_name = "ascii";
  GlyphTable glyphs;
  std::size_t segment_len = 3;
  int tiers = 6;
  std::size_t turnpoint = 11000;
  std::size_t rule = 5000;
  std::size_t structured = 7000;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  std::string templates_dir;

  /// Applies the keys present in `j` on top of the current values.
  void merge(const Json& j);
  Json to_json() const;
};

/// --config wins; otherwise $TURNMAZE_CONFIG; otherwise ./turnmaze.json when
/// it exists; otherwise nullopt.
std::optional<std::filesystem::path> config_path(const std::optional<std::string>& flag);

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick oracle-equivalence and round-trip suite behind `turnmaze selftest`.
std::vector<CheckResult> run_selftest(std::uint64_t seed);

}  // namespace turnmaze::cli
