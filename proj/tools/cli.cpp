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

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "turnmaze/errors.hpp"
#include "turnmaze/generator.hpp"
#include "turnmaze/harness.hpp"
#include "turnmaze/metrics.hpp"
#include "turnmaze/parser.hpp"
#include "turnmaze/sdpo.hpp"
#include "turnmaze/solver.hpp"
#include "turnmaze/tasks.hpp"

namespace turnmaze::cli {

void GlobalConfig::merge(const Json& j) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  try {
    if (auto it = j.find("glyphs"); it != j.end()) {
      glyphs = glyphs_from_json(*it);
      glyphs_name = it->is_string() ? it->get<std::string>() : "custom";
    }
    segment_len = j.value("segment_len", segment_len);
    tiers = j.value("tiers", tiers);
    if (auto it = j.find("counts"); it != j.end()) {
      turnpoint = it->value("turnpoint", turnpoint);
      rule = it->value("rule", rule);
      structured = it->value("structured", structured);
    }
    out_dir = j.value("out_dir", out_dir);
    seed = j.value("seed", seed);
    templates_dir = j.value("templates_dir", templates_dir);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

Json GlobalConfig::to_json() const {
  return Json{{"glyphs", glyphs_name == "custom" ? glyphs_to_json(glyphs) : Json(glyphs_name)},
              {"segment_len", segment_len},
              {"tiers", tiers},
              {"counts", {{"turnpoint", turnpoint}, {"rule", rule}, {"structured", structured}}},
              {"out_dir", out_dir},
              {"seed", seed},
              {"templates_dir", templates_dir}};
}

std::optional<std::filesystem::path> config_path(const std::optional<std::string>& flag) {
  if (flag) return std::filesystem::path(*flag);
  if (const char* env = std::getenv("TURNMAZE_CONFIG"); env && *env)
    return std::filesystem::path(env);
  if (std::filesystem::exists("turnmaze.json")) return std::filesystem::path("turnmaze.json");
  return std::nullopt;
}

namespace {

// Raw command-line values; merged into GlobalConfig after parsing.
struct Flags {
  std::string config;
  std::uint64_t seed = 0;
  std::string glyphs;
  std::string templates;
  int tiers = 0;
  bool json = false;

  // generate
  int gen_tier = 0;
  std::size_t gen_count = 1;
  int gen_side = 0;
  int gen_dead_ends = -1;
  int gen_misleading = -1;
  std::string gen_out;
  bool gen_render = false;

  // dataset
  std::size_t tc = 0, ru = 0, sr = 0;
  unsigned threads = 0;
  std::string out_dir;

  // shared
  std::string dataset;
  std::string split;
  std::string instance;
  std::string style = "star";
  std::string responses;
  std::string out;
  std::string model;
  std::size_t segment_len = 0;
  bool no_maps = false;

  // render
  std::string maze_file;
  std::size_t maze_index = 0;
  bool session = false;

  // parse
  std::string kind = "route";
  std::string in = "-";

  // score
  std::string per_tier;
  std::string scores_out;

  // sdpo synth
  std::string kinds = "all";
  std::size_t per_maze = 1;
  std::size_t synth_mazes = 60;

  // bench
  std::string styles = "cot,vot,star";
  std::string endpoint;
  std::string stub;
  std::size_t limit = 0;
  int concurrency = 0;

  // report
  std::string runs;
  std::string scores;
  std::string layout = "all";
  std::string pairs;
};

class Context {
 public:
  Context(GlobalConfig cfg, bool json, std::ostream& out, std::ostream& err)
      : cfg(std::move(cfg)), json(json), out(out), err(err) {}

  GlobalConfig cfg;
  bool json;
  std::ostream& out;
  std::ostream& err;

  TemplateSet templates() const {
    return cfg.templates_dir.empty() ? TemplateSet::builtin()
                                     : TemplateSet::load(cfg.templates_dir);
  }
  void emit(const Json& j) const { out << j.dump() << '\n'; }
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

std::vector<TaskInstance> load_dataset(const std::string& dir, const std::string& split) {
  if (dir.empty()) throw ConfigError("--dataset is required");
  return load_split(dir, split);
}

const TaskInstance& find_instance(const std::vector<TaskInstance>& all, const std::string& id) {
  for (const TaskInstance& inst : all)
    if (inst.id == id) return inst;
  throw ConfigError("no instance with id " + id);
}

std::map<std::string, const TaskInstance*> index_by_id(const std::vector<TaskInstance>& all) {
  std::map<std::string, const TaskInstance*> out;
  for (const TaskInstance& inst : all) out[inst.id] = &inst;
  return out;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<PromptStyle> parse_styles(const std::string& s) {
  std::vector<PromptStyle> out;
  for (const std::string& name : split_csv(s)) {
    const auto st = style_from_string(name);
    if (!st) throw ConfigError("unknown style " + name + " (expected cot, vot or star)");
    out.push_back(*st);
  }
  if (out.empty()) throw ConfigError("no prompt styles given");
  return out;
}

Json cell_json(const Cell& c) {
  const std::string v = format_percent(c);
  return v.empty() ? Json(nullptr) : Json(std::stod(v));
}

Json aggregates_json(const ScoreReport& report) {
  Json arr = Json::array();
  for (const AggregateRow& a : report.aggregates)
    arr.push_back({{"model", a.model},
                   {"style", a.style},
                   {"tier", a.tier ? Json(*a.tier) : Json("all")},
                   {"RP.CR", cell_json(a.rp_cr)},
                   {"RP.SR", cell_json(a.rp_sr)},
                   {"NS.Acc", cell_json(a.ns_acc)},
                   {"TC.Acc", cell_json(a.tc_acc)},
                   {"RU.Acc", cell_json(a.ru_acc)}});
  return arr;
}

// ---------------------------------------------------------------- generate

int cmd_generate(const Context& ctx, const Flags& f) {
  if (f.gen_tier < 0 || f.gen_tier > ctx.cfg.tiers)
    throw ConfigError("--tier must lie in 1.." + std::to_string(ctx.cfg.tiers));
  std::vector<Json> mazes;
  std::string rendered;
  for (std::size_t i = 0; i < f.gen_count; ++i) {
    const int k = f.gen_tier ? f.gen_tier : static_cast<int>(i % static_cast<std::size_t>(ctx.cfg.tiers)) + 1;
    GenConfig gc = GenConfig::defaults(k, derive_seed(ctx.cfg.seed, i));
    if (f.gen_side) gc.grid_side = f.gen_side;
    if (f.gen_dead_ends >= 0) gc.dead_end_count = f.gen_dead_ends;
    if (f.gen_misleading >= 0) gc.misleading_count = f.gen_misleading;
    const Maze m = generate(gc);
    mazes.push_back(maze_to_json(m));
    if (f.gen_render) rendered += maze_id(m) + "\n" + render_map(m, std::nullopt, ctx.cfg.glyphs) + "\n";
  }
  if (!f.gen_out.empty()) write_jsonl(f.gen_out, mazes);
  if (ctx.json) {
    Json j{{"count", mazes.size()}, {"seed", ctx.cfg.seed}};
    if (f.gen_out.empty())
      j["mazes"] = mazes;
    else
      j["out"] = f.gen_out;
    ctx.emit(j);
  } else if (f.gen_render) {
    ctx.out << rendered;
  } else if (f.gen_out.empty()) {
    for (const Json& m : mazes) ctx.out << m.dump() << '\n';
  } else {
    ctx.out << "wrote " << mazes.size() << " mazes to " << f.gen_out << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- dataset

int cmd_dataset(const Context& ctx, const Flags& f) {
  DatasetConfig dc;
  dc.turnpoint = ctx.cfg.turnpoint;
  dc.rule = ctx.cfg.rule;
  dc.structured = ctx.cfg.structured;
  dc.seed = ctx.cfg.seed;
  dc.tiers = ctx.cfg.tiers;
  dc.threads = f.threads;
  const std::string dir = f.out_dir.empty() ? ctx.cfg.out_dir : f.out_dir;
  const Dataset ds = build_dataset(dc);
  write_dataset(ds, dir);
  const Json manifest = ds.manifest.to_json();
  if (ctx.json) {
    ctx.emit({{"out_dir", dir},
              {"seed", ds.manifest.seed},
              {"instances", ds.instances.size()},
              {"family_counts", manifest["family_counts"]},
              {"category_counts", manifest["category_counts"]},
              {"split_sizes", manifest["split_sizes"]}});
  } else {
    ctx.out << "wrote " << ds.instances.size() << " instances to " << dir << " (train "
            << manifest["split_sizes"]["train"] << ", val " << manifest["split_sizes"]["val"]
            << ", test " << manifest["split_sizes"]["test"] << ")\n";
  }
  return 0;
}

// ---------------------------------------------------------------- render

int cmd_render(const Context& ctx, const Flags& f) {
  if (!f.maze_file.empty()) {
    const std::vector<Json> lines = read_jsonl(f.maze_file);
    if (f.maze_index >= lines.size()) throw ConfigError("--index is past the end of the file");
    const Maze m = maze_from_json(lines[f.maze_index]);
    const std::string text = render_map(m, std::nullopt, ctx.cfg.glyphs);
    if (ctx.json)
      ctx.emit({{"maze", maze_id(m)}, {"map", text}});
    else
      ctx.out << text;
    return 0;
  }
  if (f.instance.empty()) throw ConfigError("--instance (with --dataset) or --maze is required");
  const auto all = load_dataset(f.dataset, "");
  const TaskInstance& inst = find_instance(all, f.instance);
  std::string text;
  if (f.session) {
    if (inst.family != TaskFamily::route_planning)
      throw ConfigError("--session needs a route-planning instance");
    text = render_star_session(inst.maze, route_answer(inst), ctx.cfg.glyphs);
  } else {
    const auto style = style_from_string(f.style);
    if (!style) throw ConfigError("unknown style " + f.style);
    text = render_prompt(inst, *style, ctx.cfg.glyphs, ctx.templates()) + "\n";
  }
  if (ctx.json)
    ctx.emit({{"id", inst.id}, {"style", f.session ? "session" : f.style}, {"text", text}});
  else
    ctx.out << text;
  return 0;
}

// ---------------------------------------------------------------- parse

int cmd_parse(const Context& ctx, const Flags& f) {
  const std::string text = read_all(f.in);
  const TaskInstance* inst = nullptr;
  std::vector<TaskInstance> all;
  if (!f.instance.empty()) {
    all = load_dataset(f.dataset, "");
    inst = &find_instance(all, f.instance);
  }
  ParsedResponse parsed;
  if (f.kind == "route") {
    parsed = parse_route_response(text);
  } else if (f.kind == "choice") {
    parsed = parse_choice_response(text);
    if (inst && inst->is_choice()) {
      parsed.choice = parse_instance_choice(*inst, text);
      parsed.kind = parsed.choice ? ResponseKind::choice : ResponseKind::unparseable;
    }
  } else if (f.kind == "star") {
    parsed = parse_star_session(text, ctx.cfg.glyphs);
  } else {
    throw ConfigError("--kind must be route, choice or star");
  }
  Json j = parsed.to_json();
  if (inst && parsed.session)
    j["consistency"] = check_consistency(inst->maze, *parsed.session, ctx.cfg.glyphs).to_json();
  if (ctx.json)
    ctx.emit(j);
  else
    ctx.out << j.dump(2) << '\n';
  return parsed.kind == ResponseKind::unparseable ? 3 : 0;
}

// ---------------------------------------------------------------- score

int cmd_score(const Context& ctx, const Flags& f) {
  if (f.responses.empty()) throw ConfigError("--responses is required");
  const auto all = load_dataset(f.dataset, f.split);
  const auto by_id = index_by_id(all);
  std::vector<ScoreRow> rows;
  std::size_t unknown = 0;
  for (const Json& j : read_jsonl(f.responses)) {
    const RunRecord rec = RunRecord::from_json(j);
    auto it = by_id.find(rec.id);
    if (it == by_id.end()) {
      ++unknown;
      continue;
    }
    rows.push_back(score_response(*it->second, rec.raw_text, rec.style,
                                  f.model.empty() ? rec.model : f.model));
  }
  const std::size_t scored = rows.size();
  std::string scores;
  for (const ScoreRow& r : rows) scores += r.to_json().dump() + "\n";
  const ScoreReport report = aggregate(std::move(rows));
  if (!f.out.empty()) write_file(f.out, table1_csv(report));
  if (!f.per_tier.empty()) write_file(f.per_tier, per_tier_csv(report));
  if (!f.scores_out.empty()) write_file(f.scores_out, scores);
  if (ctx.json)
    ctx.emit({{"scored", scored}, {"unknown_ids", unknown}, {"aggregates", aggregates_json(report)}});
  else
    ctx.out << table1_text(report);
  if (unknown) ctx.err << "turnmaze: " << unknown << " responses name unknown instances\n";
  return 0;
}

// ---------------------------------------------------------------- sdpo

PairOptions pair_options(const Context& ctx, const Flags& f) {
  PairOptions po;
  po.segment_len = ctx.cfg.segment_len;
  po.with_maps = !f.no_maps;
  po.glyphs = ctx.cfg.glyphs;
  if (po.segment_len == 0) throw ConfigError("--L must be at least 1");
  return po;
}

std::string default_out(const Context& ctx, const Flags& f, const char* name) {
  return f.out.empty() ? (std::filesystem::path(ctx.cfg.out_dir) / name).string() : f.out;
}

int cmd_sdpo_pairs(const Context& ctx, const Flags& f) {
  if (f.responses.empty()) throw ConfigError("--responses is required");
  const auto all = load_dataset(f.dataset, f.split);
  const auto by_id = index_by_id(all);
  const PairOptions po = pair_options(ctx, f);
  std::vector<Json> out;
  std::size_t correct = 0, unparseable = 0, skipped = 0;
  std::map<std::string, std::size_t> kinds;
  for (const Json& j : read_jsonl(f.responses)) {
    const RunRecord rec = RunRecord::from_json(j);
    auto it = by_id.find(rec.id);
    if (it == by_id.end() || it->second->family != TaskFamily::route_planning) {
      ++skipped;
      continue;
    }
    const ParsedResponse parsed = parse_route_response(rec.raw_text);
    if (!parsed.trajectory) {
      ++unparseable;
      continue;
    }
    auto pair = build_pair(*it->second, *parsed.trajectory, po);
    if (!pair) {
      ++correct;
      continue;
    }
    ++kinds[std::string(to_string(*pair->error_kind))];
    out.push_back(pair->to_json());
  }
  const std::string path = default_out(ctx, f, "pairs.jsonl");
  write_jsonl(path, out);
  Json by_kind = Json::object();
  for (const auto& [k, n] : kinds) by_kind[k] = n;
  if (ctx.json)
    ctx.emit({{"out", path}, {"pairs", out.size()}, {"correct", correct},
              {"unparseable", unparseable}, {"skipped", skipped}, {"by_kind", by_kind}});
  else
    ctx.out << "wrote " << out.size() << " pairs to " << path << " (" << correct
            << " correct, " << unparseable << " unparseable)\n";
  return 0;
}

int cmd_sdpo_synth(const Context& ctx, const Flags& f) {
  std::vector<ErrorKind> kinds;
  if (f.kinds == "all") {
    kinds.assign(kErrorKinds.begin(), kErrorKinds.end());
  } else {
    for (const std::string& name : split_csv(f.kinds)) {
      const auto k = error_kind_from_string(name);
      if (!k) throw ConfigError("unknown error kind " + name);
      kinds.push_back(*k);
    }
  }
  std::vector<TaskInstance> sources;
  if (!f.dataset.empty()) {
    for (TaskInstance& inst : load_dataset(f.dataset, f.split))
      if (inst.family == TaskFamily::route_planning) sources.push_back(std::move(inst));
  } else {
    for (std::size_t i = 0; i < f.synth_mazes; ++i) {
      const int k = static_cast<int>(i % static_cast<std::size_t>(ctx.cfg.tiers)) + 1;
      sources.push_back(build_route_planning(
          generate(GenConfig::defaults(k, derive_seed(ctx.cfg.seed, 0x5e7ULL, i)))));
    }
  }
  const PairOptions po = pair_options(ctx, f);
  std::vector<Json> out;
  std::map<std::string, std::size_t> made, infeasible;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const TaskInstance& inst = sources[i];
    const Trajectory truth = route_answer(inst);
    for (ErrorKind kind : kinds)
      for (std::size_t r = 0; r < f.per_maze; ++r) {
        Rng rng(derive_seed(ctx.cfg.seed, i, static_cast<std::uint64_t>(kind) * 4096 + r));
        try {
          const Trajectory neg = synthesize_negative(inst.maze, truth, kind, rng);
          auto pair = build_pair(inst, neg, po);
          if (!pair) continue;
          pair->error_kind = kind;
          out.push_back(pair->to_json());
          ++made[std::string(to_string(kind))];
        } catch (const InfeasibleKindError&) {
          ++infeasible[std::string(to_string(kind))];
        }
      }
  }
  const std::string path = default_out(ctx, f, "pairs.jsonl");
  write_jsonl(path, out);
  Json by_kind = Json::object(), skipped = Json::object();
  for (ErrorKind k : kinds) {
    by_kind[std::string(to_string(k))] = made[std::string(to_string(k))];
    skipped[std::string(to_string(k))] = infeasible[std::string(to_string(k))];
  }
  if (ctx.json)
    ctx.emit({{"out", path}, {"pairs", out.size()}, {"by_kind", by_kind}, {"infeasible", skipped}});
  else
    ctx.out << "wrote " << out.size() << " synthetic pairs to " << path << '\n';
  return 0;
}

int cmd_sdpo_sft(const Context& ctx, const Flags& f) {
  const auto all = load_dataset(f.dataset, f.split.empty() ? "train" : f.split);
  std::vector<Json> out;
  for (const TaskInstance& inst : all)
    if (inst.family == TaskFamily::route_planning) out.push_back(sft_record(inst, ctx.cfg.glyphs));
  const std::string path = default_out(ctx, f, "sft.jsonl");
  write_jsonl(path, out);
  if (ctx.json)
    ctx.emit({{"out", path}, {"records", out.size()}});
  else
    ctx.out << "wrote " << out.size() << " SFT sessions to " << path << '\n';
  return 0;
}

// ---------------------------------------------------------------- bench

std::unique_ptr<ChatEndpoint> make_endpoint(const Flags& f,
                                            const std::vector<TaskInstance>& instances,
                                            const std::vector<PromptStyle>& styles,
                                            const Context& ctx, EndpointConfig* cfg_out) {
  if (!f.stub.empty()) {
    if (f.stub == "oracle")
      return make_oracle_stub(instances, styles, ctx.cfg.glyphs, ctx.templates());
    if (f.stub == "null") return make_null_stub();
    throw ConfigError("--stub must be oracle or null");
  }
  if (f.endpoint.empty()) throw ConfigError("--endpoint or --stub is required");
  EndpointConfig ec = EndpointConfig::load(f.endpoint);
  if (cfg_out) *cfg_out = ec;
  return std::make_unique<HttpChatEndpoint>(ec);
}

int cmd_bench(const Context& ctx, const Flags& f) {
  const auto instances = load_dataset(f.dataset, f.split.empty() ? "test" : f.split);
  RunOptions ro;
  ro.styles = parse_styles(f.styles);
  ro.glyphs = ctx.cfg.glyphs;
  ro.templates = ctx.templates();
  ro.out_dir = f.out.empty() ? std::filesystem::path(ctx.cfg.out_dir) / "runs" : std::filesystem::path(f.out);
  EndpointConfig ec;
  ec.model = f.stub.empty() ? "" : "stub-" + f.stub;
  ec.max_concurrency = 8;
  ec.retries = 0;
  auto endpoint = make_endpoint(f, instances, ro.styles, ctx, &ec);
  ro.model = f.model.empty() ? ec.model : f.model;
  ro.max_concurrency = f.concurrency > 0 ? f.concurrency : ec.max_concurrency;
  ro.retry = {ec.retries, ec.backoff_ms};
  if (f.limit) ro.max_new_records = f.limit;
  const RunSummary s = run_benchmark(instances, *endpoint, ro);
  if (ctx.json) {
    Json j{{"out", ro.out_dir.string()}, {"total", s.total},     {"resumed", s.resumed},
           {"fresh", s.fresh},           {"exhausted", s.exhausted}, {"complete", s.complete}};
    if (s.complete) j["aggregates"] = aggregates_json(s.report);
    ctx.emit(j);
  } else if (s.complete) {
    ctx.out << table1_text(s.report) << '\n' << table4_text(s.report);
  } else {
    ctx.out << "stopped after " << s.resumed + s.fresh << " of " << s.total
            << " requests; rerun the same command to resume\n";
  }
  return 0;
}

// ---------------------------------------------------------------- report

int cmd_report(const Context& ctx, const Flags& f) {
  const bool all = f.layout == "all";
  const bool want_tables = all || f.layout == "table1" || f.layout == "table4" || f.layout == "tiers";
  const bool want_margins = f.layout == "margins" || (all && !f.pairs.empty());
  if (!want_tables && !want_margins)
    throw ConfigError("--layout must be table1, table4, tiers, margins or all");
  Json j = Json::object();
  std::string text;

  if (want_tables) {
    std::string scores_path = f.scores;
    if (scores_path.empty() && !f.runs.empty())
      scores_path = (std::filesystem::path(f.runs) / "scores.jsonl").string();
    if (scores_path.empty()) throw ConfigError("--scores or --runs is required");
    std::vector<ScoreRow> rows;
    for (const Json& line : read_jsonl(scores_path)) rows.push_back(ScoreRow::from_json(line));
    const ScoreReport report = aggregate(std::move(rows));
    if (!f.out.empty()) write_reports(report, f.out);
    if (all || f.layout == "table1") {
      j["table1"] = table1_csv(report);
      text += table1_text(report) + "\n";
    }
    if (all || f.layout == "table4") {
      j["table4"] = table4_csv(report);
      text += table4_text(report) + "\n";
    }
    if (all || f.layout == "tiers") {
      j["per_tier"] = per_tier_csv(report);
      text += per_tier_csv(report);
    }
  }

  if (want_margins) {
    if (f.pairs.empty()) throw ConfigError("--pairs is required for the margins layout");
    std::vector<PreferencePair> pairs;
    for (const Json& line : read_jsonl(f.pairs)) pairs.push_back(PreferencePair::from_json(line));
    std::unique_ptr<ChatEndpoint> endpoint;
    RetryPolicy policy{0, 0};
    if (f.stub == "oracle") {
      endpoint = make_margin_oracle_stub(pairs);
    } else if (f.stub == "null") {
      endpoint = make_null_stub();
    } else if (!f.stub.empty()) {
      throw ConfigError("--stub must be oracle or null");
    } else {
      if (f.endpoint.empty()) throw ConfigError("--endpoint or --stub is required for margins");
      const EndpointConfig ec = EndpointConfig::load(f.endpoint);
      policy = {ec.retries, ec.backoff_ms};
      endpoint = std::make_unique<HttpChatEndpoint>(ec);
    }
    Rng rng(derive_seed(ctx.cfg.seed, 0x3a12ULL));
    std::vector<MarginResult> margins;
    for (const PreferencePair& p : pairs) margins.push_back(confidence_margin(p, *endpoint, rng, policy));
    const auto rows = aggregate_margins(pairs, margins);
    if (!f.out.empty()) {
      write_file(std::filesystem::path(f.out) / "margins.csv", margins_csv(rows));
      write_file(std::filesystem::path(f.out) / "margins.txt", margins_text(rows));
    }
    j["margins"] = margins_csv(rows);
    text += margins_text(rows);
  }
  if (ctx.json)
    ctx.emit(j);
  else
    ctx.out << text;
  return 0;
}

// ---------------------------------------------------------------- selftest

int cmd_selftest(const Context& ctx) {
  const auto results = run_selftest(ctx.cfg.seed);
  bool ok = true;
  Json checks = Json::array();
  for (const CheckResult& r : results) {
    ok = ok && r.passed;
    checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    if (!ctx.json)
      ctx.out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
  }
  if (ctx.json) ctx.emit({{"passed", ok}, {"checks", checks}});
  return ok ? 0 : 1;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Turn-point maze benchmark generation, scoring and preference-pair tooling",
               "turnmaze"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Flags f;

  auto* opt_config = app.add_option("--config", f.config, "JSON config file");
  auto* opt_seed = app.add_option("--seed", f.seed, "Global seed");
  auto* opt_glyphs = app.add_option("--glyphs", f.glyphs, "Glyph table: ascii or emoji");
  auto* opt_templates =
      app.add_option("--templates", f.templates, "Directory of template overrides");
  auto* opt_tiers = app.add_option("--tiers", f.tiers, "Number of difficulty tiers");
  app.add_flag("--json", f.json, "Print one JSON document on stdout");

  auto* gen = app.add_subcommand("generate", "Generate mazes as JSONL");
  gen->add_option("--tier", f.gen_tier, "Difficulty tier k (default: cycle through tiers)");
  gen->add_option("--count", f.gen_count, "Number of mazes");
  gen->add_option("--side", f.gen_side, "Grid side (default m + 6)");
  gen->add_option("--dead-ends", f.gen_dead_ends, "Dead-end stubs (default k)");
  gen->add_option("--misleading", f.gen_misleading, "Decoy destinations");
  gen->add_option("--out", f.gen_out, "Output JSONL (default stdout)");
  gen->add_flag("--render", f.gen_render, "Print each maze as a text grid");

  auto* ds = app.add_subcommand("dataset", "Build the four-family dataset with 8:1:1 splits");
  auto* opt_tc = ds->add_option("--tc", f.tc, "Turnpoint comprehension items");
  auto* opt_ru = ds->add_option("--ru", f.ru, "Rule understanding items");
  auto* opt_sr = ds->add_option("--sr", f.sr, "Structured reasoning items (route + next-step)");
  ds->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  auto* opt_out_dir = ds->add_option("--out-dir", f.out_dir, "Output directory");

  auto* render = app.add_subcommand("render", "Render a prompt, STAR session or maze map");
  render->add_option("--dataset", f.dataset, "Dataset directory");
  render->add_option("--instance", f.instance, "Instance id");
  render->add_option("--style", f.style, "cot, vot or star")->check(CLI::IsMember({"cot", "vot", "star"}));
  render->add_flag("--session", f.session, "Render the ground-truth STAR session");
  render->add_option("--maze", f.maze_file, "Maze JSONL file (map only)");
  render->add_option("--index", f.maze_index, "Line of --maze to render");

  auto* parse = app.add_subcommand("parse", "Parse a model response into JSON");
  parse->add_option("--kind", f.kind, "route, choice or star")
      ->check(CLI::IsMember({"route", "choice", "star"}));
  parse->add_option("--in", f.in, "Response text file, - for stdin");
  parse->add_option("--dataset", f.dataset, "Dataset directory (for --instance)");
  parse->add_option("--instance", f.instance, "Instance id: enables option-word matching and STAR consistency checks");

  auto* score = app.add_subcommand("score", "Score responses against a dataset");
  score->add_option("--dataset", f.dataset, "Dataset directory")->required();
  score->add_option("--responses", f.responses, "Responses JSONL ({\"id\", \"raw_text\"})")->required();
  score->add_option("--split", f.split, "Restrict to one split");
  score->add_option("--out", f.out, "Summary CSV in the table1 layout");
  score->add_option("--per-tier", f.per_tier, "Per-tier CSV");
  score->add_option("--scores", f.scores_out, "Per-instance scores JSONL");
  score->add_option("--model", f.model, "Model label for the report");

  auto* sdpo = app.add_subcommand("sdpo", "Segment-level preference pairs");
  sdpo->require_subcommand(1, 1);
  auto* pairs = sdpo->add_subcommand("pairs", "Pairs from model responses");
  auto* synth = sdpo->add_subcommand("synth", "Pairs from synthesized negatives");
  auto* sft = sdpo->add_subcommand("emit-sft", "Ground-truth STAR sessions for SFT");
  CLI::Option* opt_l = nullptr;
  for (CLI::App* sub : {pairs, synth, sft}) {
    sub->add_option("--dataset", f.dataset, "Dataset directory");
    sub->add_option("--split", f.split, "Split to read");
    sub->add_option("--out", f.out, "Output JSONL");
  }
  for (CLI::App* sub : {pairs, synth}) {
    auto* o = sub->add_option("--L", f.segment_len, "Segment length");
    if (!opt_l) opt_l = o;
    sub->add_flag("--no-maps", f.no_maps, "Omit maps from step blocks");
  }
  auto* opt_l_synth = synth->get_option("--L");
  pairs->add_option("--responses", f.responses, "Responses JSONL")->required();
  synth->add_option("--kinds", f.kinds, "all or a comma list of error kinds");
  synth->add_option("--per-maze", f.per_maze, "Negatives per maze and kind");
  synth->add_option("--mazes", f.synth_mazes, "Mazes to generate when no --dataset is given");

  auto* bench = app.add_subcommand("bench", "Run a chat endpoint over a dataset split");
  bench->add_option("--dataset", f.dataset, "Dataset directory")->required();
  bench->add_option("--split", f.split, "Split (default test)");
  bench->add_option("--styles", f.styles, "Comma list of cot, vot, star");
  bench->add_option("--endpoint", f.endpoint, "Endpoint config JSON");
  bench->add_option("--stub", f.stub, "Local stub instead of an endpoint: oracle or null")
      ->check(CLI::IsMember({"oracle", "null"}));
  bench->add_option("--out", f.out, "Run directory (checkpoint and reports)");
  bench->add_option("--model", f.model, "Model label for reports");
  bench->add_option("--limit", f.limit, "Stop after this many new requests");
  bench->add_option("--concurrency", f.concurrency, "Override max concurrent requests");

  auto* report = app.add_subcommand("report", "Render summary, style-comparison and margin reports");
  report->add_option("--runs", f.runs, "Run directory holding scores.jsonl");
  report->add_option("--scores", f.scores, "Scores JSONL");
  report->add_option("--layout", f.layout, "table1, table4, tiers, margins or all")
      ->check(CLI::IsMember({"table1", "table4", "tiers", "margins", "all"}));
  report->add_option("--pairs", f.pairs, "Preference pairs JSONL (margins)");
  report->add_option("--endpoint", f.endpoint, "Endpoint config JSON (margins)");
  report->add_option("--stub", f.stub, "oracle or null (margins)")
      ->check(CLI::IsMember({"oracle", "null"}));
  report->add_option("--out", f.out, "Directory for CSV/text reports");

  auto* selftest = app.add_subcommand("selftest", "Run the built-in oracle and round-trip checks");

  std::vector<const char*> argv{"turnmaze"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string reason = e.what();
    // Name the offending word when the first positional is not a subcommand.
    for (std::size_t i = 0; i < args.size(); ++i) {
      const std::string& a = args[i];
      if (a.starts_with("-")) {
        if (a != "--json" && a.find('=') == std::string::npos) ++i;
        continue;
      }
      if (!app.get_subcommand_no_throw(a)) reason = "unknown subcommand '" + a + "'";
      break;
    }
    err << "turnmaze: " << reason << "\n" << app.help();
    return 2;
  }

  try {
    GlobalConfig cfg;
    const auto path =
        config_path(opt_config->count() ? std::optional<std::string>(f.config) : std::nullopt);
    if (path) {
      std::ifstream in(*path);
      if (!in) throw ConfigError("cannot open config " + path->string());
      Json j = Json::parse(in, nullptr, false);
      if (j.is_discarded()) throw ConfigError("config " + path->string() + " is not valid JSON");
      cfg.merge(j);
    }
    if (opt_seed->count()) cfg.seed = f.seed;
    if (opt_glyphs->count()) {
      auto g = GlyphTable::named(f.glyphs);
      if (!g) throw ConfigError("--glyphs must be ascii or emoji");
      cfg.glyphs = *g;
      cfg.glyphs_name = f.glyphs;
    }
    if (opt_templates->count()) cfg.templates_dir = f.templates;
    if (opt_tiers->count()) cfg.tiers = f.tiers;
    if (opt_tc->count()) cfg.turnpoint = f.tc;
    if (opt_ru->count()) cfg.rule = f.ru;
    if (opt_sr->count()) cfg.structured = f.sr;
    if (opt_out_dir->count()) cfg.out_dir = f.out_dir;
    if ((opt_l && opt_l->count()) || (opt_l_synth && opt_l_synth->count()))
      cfg.segment_len = f.segment_len;
    if (cfg.tiers < 1 || cfg.tiers > 64) throw ConfigError("tiers must lie in 1..64");

    Context ctx(std::move(cfg), f.json, out, err);
    if (gen->parsed()) return cmd_generate(ctx, f);
    if (ds->parsed()) return cmd_dataset(ctx, f);
    if (render->parsed()) return cmd_render(ctx, f);
    if (parse->parsed()) return cmd_parse(ctx, f);
    if (score->parsed()) return cmd_score(ctx, f);
    if (pairs->parsed()) return cmd_sdpo_pairs(ctx, f);
    if (synth->parsed()) return cmd_sdpo_synth(ctx, f);
    if (sft->parsed()) return cmd_sdpo_sft(ctx, f);
    if (bench->parsed()) return cmd_bench(ctx, f);
    if (report->parsed()) return cmd_report(ctx, f);
    if (selftest->parsed()) return cmd_selftest(ctx);
    err << "turnmaze: no subcommand\n";
    return 2;
  } catch (const ConfigError& e) {
    if (f.json) out << Json{{"error", e.what()}}.dump() << '\n';
    err << "turnmaze: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    if (f.json) out << Json{{"error", e.what()}}.dump() << '\n';
    err << "turnmaze: " << e.what() << '\n';
    return 1;
  }
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, out, err);
}

}  // namespace turnmaze::cli
