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

#include "turnmaze/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "turnmaze/errors.hpp"
#include "turnmaze/parser.hpp"
#include "turnmaze/solver.hpp"

namespace turnmaze {

Json RunRecord::to_json() const {
  return Json{{"id", id},
              {"style", style},
              {"model", model},
              {"raw_text", raw_text},
              {"latency_ms", latency_ms},
              {"attempts", attempts},
              {"status", status}};
}

RunRecord RunRecord::from_json(const Json& j) {
  try {
    RunRecord r;
    r.id = j.at("id").get<std::string>();
    r.raw_text = j.at("raw_text").get<std::string>();
    r.style = j.value("style", "");
    r.model = j.value("model", "");
    r.latency_ms = j.value("latency_ms", 0.0);
    r.attempts = j.value("attempts", 0);
    r.status = j.value("status", "ok");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad response record: ") + e.what());
  }
}

CallResult call_with_retries(ChatEndpoint& endpoint, const std::string& prompt,
                             const RetryPolicy& policy, int* attempts) {
  CallResult last;
  for (int a = 0; a <= policy.retries; ++a) {
    if (attempts) *attempts = a + 1;
    last = endpoint.chat(prompt);
    if (last.status == CallStatus::ok) return last;
    if (last.status == CallStatus::quota) throw QuotaExhaustedError(last.error);
    if (a < policy.retries) {
      const long long wait =
          std::min<long long>(60000, static_cast<long long>(policy.backoff_ms) << std::min(a, 16));
      std::this_thread::sleep_for(std::chrono::milliseconds(wait));
    }
  }
  if (last.status == CallStatus::unreachable) throw EndpointUnreachableError(last.error);
  return last;
}

namespace {

std::string job_key(const std::string& id, std::string_view style) {
  std::string k = id;
  k += '\x1f';
  k += style;
  return k;
}

std::map<std::string, RunRecord> read_checkpoint(const std::filesystem::path& path) {
  std::map<std::string, RunRecord> out;
  std::ifstream in(path, std::ios::binary);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    // A run killed mid-write leaves at most one torn line; it is re-sent.
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    try {
      RunRecord r = RunRecord::from_json(j);
      out.insert_or_assign(job_key(r.id, r.style), std::move(r));
    } catch (const FormatError&) {
    }
  }
  return out;
}

bool ends_with_newline(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) return true;
  const auto size = static_cast<long long>(in.tellg());
  if (size <= 0) return true;
  in.seekg(size - 1);
  char c = 0;
  in.get(c);
  return c == '\n';
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

}  // namespace

void write_reports(const ScoreReport& report, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_text(out_dir / "table1.csv", table1_csv(report));
  write_text(out_dir / "table1.txt", table1_text(report));
  write_text(out_dir / "table4.csv", table4_csv(report));
  write_text(out_dir / "table4.txt", table4_text(report));
  write_text(out_dir / "per_tier.csv", per_tier_csv(report));
}

RunSummary run_benchmark(const std::vector<TaskInstance>& instances, ChatEndpoint& endpoint,
                         const RunOptions& opts) {
  if (opts.styles.empty()) throw ConfigError("at least one prompt style is required");
  if (opts.max_concurrency < 1) throw ConfigError("max_concurrency must be at least 1");
  if (opts.out_dir.empty()) throw ConfigError("an output directory is required");
  std::filesystem::create_directories(opts.out_dir);
  const auto checkpoint_path = opts.out_dir / kCheckpointFile;

  struct Job {
    std::size_t instance;
    PromptStyle style;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (PromptStyle s : opts.styles) jobs.push_back({i, s});

  std::map<std::string, RunRecord> done = read_checkpoint(checkpoint_path);
  RunSummary summary;
  summary.total = jobs.size();
  std::vector<std::size_t> pending;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (done.count(job_key(instances[jobs[j].instance].id, to_string(jobs[j].style))))
      ++summary.resumed;
    else
      pending.push_back(j);
  }

  const bool torn = !ends_with_newline(checkpoint_path);
  std::ofstream sink(checkpoint_path, std::ios::binary | std::ios::app);
  if (!sink) throw FormatError("cannot open checkpoint " + checkpoint_path.string());
  if (torn) sink << '\n';

  std::mutex sink_mutex;
  std::atomic<std::size_t> next{0}, started{0}, in_flight{0}, peak{0}, exhausted{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (!stop) {
      const std::size_t slot = next++;
      if (slot >= pending.size()) break;
      if (opts.max_new_records && started++ >= *opts.max_new_records) {
        stop = true;
        break;
      }
      const Job& job = jobs[pending[slot]];
      const TaskInstance& inst = instances[job.instance];
      RunRecord rec;
      rec.id = inst.id;
      rec.style = std::string(to_string(job.style));
      rec.model = opts.model;
      try {
        const std::string prompt = render_prompt(inst, job.style, opts.glyphs, opts.templates);
        const std::size_t now = ++in_flight;
        std::size_t seen = peak.load();
        while (now > seen && !peak.compare_exchange_weak(seen, now)) {
        }
        const auto t0 = std::chrono::steady_clock::now();
        CallResult r;
        try {
          r = call_with_retries(endpoint, prompt, opts.retry, &rec.attempts);
        } catch (...) {
          --in_flight;
          throw;
        }
        --in_flight;
        rec.latency_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (r.status == CallStatus::ok) {
          rec.raw_text = std::move(r.text);
        } else {
          rec.status = "exhausted_retries";
          ++exhausted;
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        stop = true;
        break;
      }
      std::lock_guard lock(sink_mutex);
      sink << rec.to_json().dump() << '\n';
      sink.flush();
      done.insert_or_assign(job_key(rec.id, rec.style), std::move(rec));
      ++summary.fresh;
    }
  };

  {
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(opts.max_concurrency),
                                                std::max<std::size_t>(pending.size(), 1));
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  sink.close();
  summary.peak_concurrency = peak;
  summary.exhausted = exhausted;
  if (failure) std::rethrow_exception(failure);
  if (summary.resumed + summary.fresh < summary.total) return summary;

  std::string responses, scores;
  std::vector<ScoreRow> rows;
  rows.reserve(jobs.size());
  for (const Job& job : jobs) {
    const TaskInstance& inst = instances[job.instance];
    const RunRecord& rec = done.at(job_key(inst.id, to_string(job.style)));
    Json line = rec.to_json();
    line.erase("latency_ms");
    responses += line.dump() + "\n";
    ScoreRow row = score_response(inst, rec.raw_text, rec.style, opts.model);
    scores += row.to_json().dump() + "\n";
    rows.push_back(std::move(row));
  }
  write_text(opts.out_dir / "responses.jsonl", responses);
  write_text(opts.out_dir / "scores.jsonl", scores);
  summary.report = aggregate(std::move(rows));
  write_reports(summary.report, opts.out_dir);
  summary.complete = true;
  return summary;
}

namespace {

std::string oracle_answer(const TaskInstance& inst, PromptStyle style, const GlyphTable& g) {
  switch (inst.family) {
    case TaskFamily::route_planning: {
      const Trajectory path = route_answer(inst);
      if (style == PromptStyle::star) return render_star_session(inst.maze, path, g);
      return "The complete path is: " + to_string(path);
    }
    case TaskFamily::next_step:
      if (style == PromptStyle::star)
        return "Therefore, the direction of next movement is " +
               inst.payload.at("value").get<std::string>() + ".";
      return "Answer: " + inst.answer_key.get<std::string>();
    case TaskFamily::turnpoint:
    case TaskFamily::rule:
      return "Therefore, the answer is " + inst.answer_key.get<std::string>() + ".";
  }
  return {};
}

}  // namespace

std::unique_ptr<ChatEndpoint> make_oracle_stub(const std::vector<TaskInstance>& instances,
                                               const std::vector<PromptStyle>& styles,
                                               const GlyphTable& glyphs,
                                               const TemplateSet& templates) {
  auto answers = std::make_shared<std::unordered_map<std::string, std::string>>();
  for (const TaskInstance& inst : instances)
    for (PromptStyle s : styles)
      answers->emplace(render_prompt(inst, s, glyphs, templates), oracle_answer(inst, s, glyphs));
  return std::make_unique<CallbackEndpoint>([answers](const std::string& prompt) {
    auto it = answers->find(prompt);
    if (it == answers->end()) return CallResult{CallStatus::ok, "I do not know.", {}};
    return CallResult{CallStatus::ok, it->second, {}};
  });
}

std::unique_ptr<ChatEndpoint> make_null_stub() {
  return std::make_unique<CallbackEndpoint>(
      [](const std::string&) { return CallResult{CallStatus::ok, "", {}}; });
}

std::unique_ptr<ChatEndpoint> make_margin_oracle_stub(const std::vector<PreferencePair>& pairs) {
  auto answers = std::make_shared<std::unordered_map<std::string, std::string>>();
  for (const PreferencePair& p : pairs) {
    answers->emplace(forced_choice_prompt(p, p.chosen, p.rejected), "A");
    answers->emplace(forced_choice_prompt(p, p.rejected, p.chosen), "B");
  }
  return std::make_unique<CallbackEndpoint>([answers](const std::string& prompt) {
    auto it = answers->find(prompt);
    return CallResult{CallStatus::ok, it == answers->end() ? "no answer" : it->second, {}};
  });
}

std::string forced_choice_prompt(const PreferencePair& pair, const std::string& first,
                                 const std::string& second) {
  return pair.prompt_context + "\nTwo candidate continuations follow.\nContinuation A:\n" +
         first + "Continuation B:\n" + second +
         "Which continuation is correct? Answer with A or B.";
}

namespace {

double logprob_with_retries(ChatEndpoint& endpoint, const std::string& context,
                            const std::string& continuation, const RetryPolicy& policy) {
  LogprobResult last;
  for (int a = 0; a <= policy.retries; ++a) {
    last = *endpoint.continuation_logprob(context, continuation);
    if (last.status == CallStatus::ok) return last.logprob;
    if (last.status == CallStatus::quota) throw QuotaExhaustedError(last.error);
    if (a < policy.retries)
      std::this_thread::sleep_for(std::chrono::milliseconds(
          std::min<long long>(60000, static_cast<long long>(policy.backoff_ms) << std::min(a, 16))));
  }
  throw EndpointUnreachableError("log-probability request failed: " + last.error);
}

}  // namespace

MarginResult confidence_margin(const PreferencePair& pair, ChatEndpoint& endpoint, Rng& rng,
                               const RetryPolicy& policy) {
  if (auto first = endpoint.continuation_logprob(pair.prompt_context, pair.chosen)) {
    if (first->status == CallStatus::quota) throw QuotaExhaustedError(first->error);
    const double chosen =
        first->status == CallStatus::ok
            ? first->logprob
            : logprob_with_retries(endpoint, pair.prompt_context, pair.chosen, policy);
    const double rejected =
        logprob_with_retries(endpoint, pair.prompt_context, pair.rejected, policy);
    return {chosen - rejected, MarginMode::logprob};
  }
  if (!endpoint.supports_chat())
    throw UnsupportedCapabilityError("endpoint offers neither log-probabilities nor chat");
  const bool chosen_first = rng.coin();
  const std::string prompt = chosen_first
                                 ? forced_choice_prompt(pair, pair.chosen, pair.rejected)
                                 : forced_choice_prompt(pair, pair.rejected, pair.chosen);
  const CallResult r = call_with_retries(endpoint, prompt, policy);
  MarginResult out{0.0, MarginMode::forced_choice};
  if (r.status != CallStatus::ok) return out;
  const auto letter = parse_choice(r.text);
  if (letter == 'A') out.margin = chosen_first ? 1.0 : -1.0;
  if (letter == 'B') out.margin = chosen_first ? -1.0 : 1.0;
  return out;
}

std::vector<MarginRow> aggregate_margins(const std::vector<PreferencePair>& pairs,
                                         const std::vector<MarginResult>& margins) {
  if (pairs.size() != margins.size()) throw ConfigError("one margin per pair is required");
  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (ErrorKind k : kErrorKinds) acc[std::string(to_string(k))];
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string kind =
        pairs[i].error_kind ? std::string(to_string(*pairs[i].error_kind)) : "unlabelled";
    acc[kind].first += margins[i].margin;
    acc[kind].second += 1;
  }
  std::vector<MarginRow> rows;
  auto emit = [&](const std::string& kind) {
    const auto& [sum, n] = acc[kind];
    rows.push_back({kind, n, n ? sum / static_cast<double>(n) : 0.0});
  };
  for (ErrorKind k : kErrorKinds) emit(std::string(to_string(k)));
  if (acc.count("unlabelled")) emit("unlabelled");
  return rows;
}

std::string margins_csv(const std::vector<MarginRow>& rows) {
  std::string out = "ErrorKind,N,MeanMargin\n";
  char buf[64];
  for (const MarginRow& r : rows) {
    if (r.n)
      std::snprintf(buf, sizeof buf, "%.4f", r.mean);
    else
      buf[0] = '\0';
    out += r.kind + "," + std::to_string(r.n) + "," + buf + "\n";
  }
  return out;
}

std::string margins_text(const std::vector<MarginRow>& rows) {
  std::size_t width = 9;
  for (const MarginRow& r : rows) width = std::max(width, r.kind.size());
  std::string out = "ErrorKind" + std::string(width - 9 + 2, ' ') + "N       Mean  \n";
  char buf[64];
  for (const MarginRow& r : rows) {
    if (r.n)
      std::snprintf(buf, sizeof buf, "%-6zu  %+.3f  ", r.n, r.mean);
    else
      std::snprintf(buf, sizeof buf, "%-6zu  %6s  ", r.n, "-");
    std::string bar;
    if (r.n) {
      const int len = static_cast<int>(std::abs(r.mean) * 20.0 + 0.5);
      bar.assign(static_cast<std::size_t>(len), r.mean < 0 ? '-' : '#');
    }
    out += r.kind + std::string(width - r.kind.size() + 2, ' ') + buf + bar + "\n";
  }
  return out;
}

}  // namespace turnmaze
