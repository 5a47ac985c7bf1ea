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

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "turnmaze/endpoint.hpp"
#include "turnmaze/metrics.hpp"
#include "turnmaze/prompts.hpp"
#include "turnmaze/rng.hpp"
#include "turnmaze/sdpo.hpp"
#include "turnmaze/tasks.hpp"

namespace turnmaze {

struct RunRecord {
  std::string id;
  std::string style;
  std::string model;
  std::string raw_text;
  double latency_ms = 0.0;
  int attempts = 0;
  /// "ok" or "exhausted_retries".
  std::string status = "ok";

  Json to_json() const;
  static RunRecord from_json(const Json& j);
};

struct RetryPolicy {
  int retries = 3;
  int backoff_ms = 500;
};

struct RunOptions {
  std::vector<PromptStyle> styles = {PromptStyle::cot, PromptStyle::vot, PromptStyle::star};
  std::filesystem::path out_dir;
  std::string model;  // label in reports
  int max_concurrency = 4;
  RetryPolicy retry;
  GlyphTable glyphs;
  TemplateSet templates = TemplateSet::builtin();
  /// Stop after this many new records (simulates an interrupted run).
  std::optional<std::size_t> max_new_records;
};

struct RunSummary {
  std::size_t total = 0;     // instance x style jobs
  std::size_t resumed = 0;   // found in the checkpoint
  std::size_t fresh = 0;     // dispatched in this run
  std::size_t exhausted = 0;
  bool complete = false;     // final outputs written
  std::size_t peak_concurrency = 0;
  ScoreReport report;
};

inline constexpr const char* kCheckpointFile = "responses.checkpoint.jsonl";

/// Renders every instance per style, dispatches with bounded concurrency and
/// retries, appends each record to the checkpoint, then scores and writes
/// responses.jsonl, scores.jsonl, table1/table4/per_tier reports. Records
/// already in the checkpoint are not re-sent. Throws QuotaExhaustedError or
/// EndpointUnreachableError, leaving the checkpoint in place.
RunSummary run_benchmark(const std::vector<TaskInstance>& instances, ChatEndpoint& endpoint,
                         const RunOptions& opts);

/// Writes table1.{csv,txt}, table4.{csv,txt} and per_tier.csv.
void write_reports(const ScoreReport& report, const std::filesystem::path& out_dir);

/// Stub that answers every prompt rendered from `instances` with the correct
/// answer in the format the prompt asks for.
std::unique_ptr<ChatEndpoint> make_oracle_stub(const std::vector<TaskInstance>& instances,
                                               const std::vector<PromptStyle>& styles,
                                               const GlyphTable& glyphs = {},
                                               const TemplateSet& templates =
                                                   TemplateSet::builtin());
/// Stub that always replies "no answer".
std::unique_ptr<ChatEndpoint> make_null_stub();
/// Stub that, shown a forced-choice prompt for one of `pairs`, always picks
/// the chosen segment.
std::unique_ptr<ChatEndpoint> make_margin_oracle_stub(const std::vector<PreferencePair>& pairs);

/// One call with retries; transient failures back off exponentially.
/// Throws QuotaExhaustedError / EndpointUnreachableError.
CallResult call_with_retries(ChatEndpoint& endpoint, const std::string& prompt,
                             const RetryPolicy& policy, int* attempts = nullptr);

enum class MarginMode : std::uint8_t { logprob, forced_choice };

struct MarginResult {
  double margin = 0.0;
  MarginMode mode = MarginMode::logprob;
};

/// Log-probability of chosen minus rejected under the pair's prompt context
/// when available; otherwise a forced choice between the two segments in
/// random A/B order scoring +1 (chosen), -1 (rejected) or 0 (no answer).
/// Throws UnsupportedCapabilityError when the endpoint offers neither.
MarginResult confidence_margin(const PreferencePair& pair, ChatEndpoint& endpoint, Rng& rng,
                               const RetryPolicy& policy = {});

/// Forced-choice prompt with `first` labelled A and `second` labelled B.
std::string forced_choice_prompt(const PreferencePair& pair, const std::string& first,
                                 const std::string& second);

struct MarginRow {
  std::string kind;  // error kind or "unlabelled"
  std::size_t n = 0;
  double mean = 0.0;
};

std::vector<MarginRow> aggregate_margins(const std::vector<PreferencePair>& pairs,
                                         const std::vector<MarginResult>& margins);
std::string margins_csv(const std::vector<MarginRow>& rows);
std::string margins_text(const std::vector<MarginRow>& rows);

}  // namespace turnmaze
