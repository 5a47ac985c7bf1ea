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

#include "turnmaze/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <tuple>

#include "turnmaze/errors.hpp"
#include "turnmaze/parser.hpp"
#include "turnmaze/prompts.hpp"
#include "turnmaze/solver.hpp"

namespace turnmaze {

RouteScore score_route(const Maze& maze, const std::optional<Trajectory>& predicted) {
  RouteScore s;
  s.optimal_steps = shortest_path(maze).length;
  if (!predicted) return s;
  const ExecutionTrace trace = execute(maze, *predicted);
  s.valid_steps = trace.valid_steps();
  s.cr = s.optimal_steps == 0
             ? 1.0
             : std::min(1.0, static_cast<double>(s.valid_steps) /
                                 static_cast<double>(s.optimal_steps));
  s.sr = trace.fully_valid() && trace.reached_destination &&
         s.valid_steps == s.optimal_steps;
  return s;
}

bool score_choice(const TaskInstance& inst, std::optional<char> parsed) {
  if (!parsed) return false;
  return *parsed == answer_letter(inst);
}

Json ScoreRow::to_json() const {
  Json j;
  j["id"] = id;
  j["family"] = std::string(to_string(family));
  j["tier"] = tier;
  j["style"] = style;
  j["model"] = model;
  if (route) {
    j["valid_steps"] = route->valid_steps;
    j["optimal_steps"] = route->optimal_steps;
    j["cr"] = route->cr;
    j["sr"] = route->sr;
  }
  if (correct) j["correct"] = *correct;
  return j;
}

ScoreRow ScoreRow::from_json(const Json& j) {
  try {
    ScoreRow r;
    r.id = j.at("id").get<std::string>();
    const auto fam = family_from_string(j.at("family").get<std::string>());
    if (!fam) throw FormatError("unknown family in score row " + r.id);
    r.family = *fam;
    r.tier = j.at("tier").get<int>();
    r.style = j.value("style", "");
    r.model = j.value("model", "");
    if (j.contains("cr")) {
      RouteScore s;
      s.valid_steps = j.at("valid_steps").get<std::size_t>();
      s.optimal_steps = j.at("optimal_steps").get<std::size_t>();
      s.cr = j.at("cr").get<double>();
      s.sr = j.at("sr").get<bool>();
      r.route = s;
    }
    if (j.contains("correct")) r.correct = j.at("correct").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad score row: ") + e.what());
  }
}

ScoreRow score_response(const TaskInstance& inst, std::string_view raw_text, std::string style,
                        std::string model) {
  ScoreRow row;
  row.id = inst.id;
  row.family = inst.family;
  row.tier = inst.tier;
  row.style = std::move(style);
  row.model = std::move(model);
  if (inst.family == TaskFamily::route_planning)
    row.route = score_route(inst.maze, parse_route_response(raw_text).trajectory);
  else
    row.correct = score_choice(inst, parse_instance_choice(inst, raw_text));
  return row;
}

namespace {

int style_rank(std::string_view style) {
  if (auto s = style_from_string(style)) return static_cast<int>(*s);
  return 3;
}

struct Acc {
  double sum = 0;
  std::size_t n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  Cell cell() const {
    Cell c;
    c.n = n;
    if (n) c.value = sum / static_cast<double>(n);
    return c;
  }
};

struct GroupAcc {
  Acc rp_cr, rp_sr, ns, tc, ru;
  void add(const ScoreRow& r) {
    switch (r.family) {
      case TaskFamily::route_planning:
        if (r.route) {
          rp_cr.add(r.route->cr);
          rp_sr.add(r.route->sr ? 1.0 : 0.0);
        }
        break;
      case TaskFamily::next_step:
        if (r.correct) ns.add(*r.correct ? 1.0 : 0.0);
        break;
      case TaskFamily::turnpoint:
        if (r.correct) tc.add(*r.correct ? 1.0 : 0.0);
        break;
      case TaskFamily::rule:
        if (r.correct) ru.add(*r.correct ? 1.0 : 0.0);
        break;
    }
  }
};

// Key ordering: model, style rank, style, tier (0 = all tiers first).
using GroupKey = std::tuple<std::string, int, std::string, int>;

}  // namespace

const AggregateRow* ScoreReport::find(std::string_view model, std::string_view style,
                                      std::optional<int> tier) const {
  for (const AggregateRow& a : aggregates)
    if (a.model == model && a.style == style && a.tier == tier) return &a;
  return nullptr;
}

ScoreReport aggregate(std::vector<ScoreRow> rows) {
  ScoreReport report;
  std::map<GroupKey, GroupAcc> groups;
  for (const ScoreRow& r : rows) {
    const int rank = style_rank(r.style);
    groups[{r.model, rank, r.style, 0}].add(r);
    groups[{r.model, rank, r.style, r.tier}].add(r);
  }
  for (const auto& [key, acc] : groups) {
    AggregateRow a;
    a.model = std::get<0>(key);
    a.style = std::get<2>(key);
    if (std::get<3>(key) != 0) a.tier = std::get<3>(key);
    a.rp_cr = acc.rp_cr.cell();
    a.rp_sr = acc.rp_sr.cell();
    a.ns_acc = acc.ns.cell();
    a.tc_acc = acc.tc.cell();
    a.ru_acc = acc.ru.cell();
    report.aggregates.push_back(std::move(a));
  }
  std::sort(rows.begin(), rows.end(), [](const ScoreRow& x, const ScoreRow& y) {
    return std::tuple(x.model, style_rank(x.style), x.style, x.family, x.tier, x.id) <
           std::tuple(y.model, style_rank(y.style), y.style, y.family, y.tier, y.id);
  });
  report.rows = std::move(rows);
  return report;
}

std::string format_percent(const Cell& cell) {
  if (!cell.value) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *cell.value * 100.0);
  return buf;
}

namespace {

std::string variant_label(std::string_view style) {
  if (auto s = style_from_string(style)) return std::string(style_label(*s));
  return style.empty() ? std::string("--") : std::string(style);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string text_cell(const Cell& c) {
  const std::string v = format_percent(c);
  return v.empty() ? "-" : v;
}

std::string align(const std::vector<std::vector<std::string>>& table) {
  std::vector<std::size_t> width;
  for (const auto& row : table)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], row[i].size());
    }
  std::string out;
  for (const auto& row : table) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) line.append(width[i] - row[i].size(), ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::vector<std::string> header_cells(std::string_view header) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = header.find(',', pos);
    out.emplace_back(header.substr(pos, comma == std::string_view::npos ? header.npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<const AggregateRow*> overall_rows(const ScoreReport& r) {
  std::vector<const AggregateRow*> out;
  for (const AggregateRow& a : r.aggregates)
    if (!a.tier) out.push_back(&a);
  return out;
}

std::vector<std::string> models_of(const ScoreReport& r) {
  std::vector<std::string> out;
  for (const AggregateRow& a : r.aggregates)
    if (out.empty() || out.back() != a.model) out.push_back(a.model);
  return out;
}

}  // namespace

std::string table1_csv(const ScoreReport& report) {
  std::string out = std::string(kTable1Header) + "\n";
  for (const AggregateRow* a : overall_rows(report))
    out += csv_field(a->model) + "," + csv_field(variant_label(a->style)) + "," +
           format_percent(a->rp_cr) + "," + format_percent(a->rp_sr) + "," +
           format_percent(a->ns_acc) + "," + format_percent(a->tc_acc) + "," +
           format_percent(a->ru_acc) + "\n";
  return out;
}

std::string table1_text(const ScoreReport& report) {
  std::vector<std::vector<std::string>> t{header_cells(kTable1Header)};
  for (const AggregateRow* a : overall_rows(report))
    t.push_back({a->model, variant_label(a->style), text_cell(a->rp_cr), text_cell(a->rp_sr),
                 text_cell(a->ns_acc), text_cell(a->tc_acc), text_cell(a->ru_acc)});
  return align(t);
}

namespace {

struct Table4Block {
  std::string model;
  // metric (CR, SR, Acc) x style (cot, vot, star)
  std::array<std::array<Cell, 3>, 3> cells{};
};

std::vector<Table4Block> table4_blocks(const ScoreReport& report) {
  std::vector<Table4Block> out;
  for (const std::string& model : models_of(report)) {
    Table4Block b{model, {}};
    for (PromptStyle s : kPromptStyles)
      if (const AggregateRow* a = report.find(model, to_string(s))) {
        const auto col = static_cast<std::size_t>(s);
        b.cells[0][col] = a->rp_cr;
        b.cells[1][col] = a->rp_sr;
        b.cells[2][col] = a->ns_acc;
      }
    out.push_back(std::move(b));
  }
  return out;
}

constexpr std::array<std::string_view, 3> kTable4Metrics = {"CR", "SR", "Acc"};

}  // namespace

std::string table4_csv(const ScoreReport& report) {
  std::string out = std::string(kTable4Header) + "\n";
  for (const Table4Block& b : table4_blocks(report))
    for (std::size_t m = 0; m < 3; ++m)
      out += csv_field(b.model) + "," + std::string(kTable4Metrics[m]) + "," +
             format_percent(b.cells[m][0]) + "," + format_percent(b.cells[m][1]) + "," +
             format_percent(b.cells[m][2]) + "\n";
  return out;
}

std::string table4_text(const ScoreReport& report) {
  std::string out;
  for (const Table4Block& b : table4_blocks(report)) {
    if (!out.empty()) out += "\n";
    std::vector<std::vector<std::string>> t{{"Model", b.model, "", ""},
                                            {"Metric", "+CoT", "+VoT", "+Ours"}};
    for (std::size_t m = 0; m < 3; ++m)
      t.push_back({std::string(kTable4Metrics[m]), text_cell(b.cells[m][0]),
                   text_cell(b.cells[m][1]), text_cell(b.cells[m][2])});
    out += align(t);
  }
  if (out.empty()) out = align({{"Metric", "+CoT", "+VoT", "+Ours"}});
  return out;
}

std::string per_tier_csv(const ScoreReport& report) {
  std::string out = std::string(kPerTierHeader) + "\n";
  for (const AggregateRow& a : report.aggregates) {
    const std::size_t n = a.rp_cr.n + a.ns_acc.n + a.tc_acc.n + a.ru_acc.n;
    out += csv_field(a.model) + "," + csv_field(variant_label(a.style)) + "," +
           (a.tier ? std::to_string(*a.tier) : std::string("all")) + "," +
           format_percent(a.rp_cr) + "," + format_percent(a.rp_sr) + "," +
           format_percent(a.ns_acc) + "," + format_percent(a.tc_acc) + "," +
           format_percent(a.ru_acc) + "," + std::to_string(n) + "\n";
  }
  return out;
}

}  // namespace turnmaze
