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

#include "turnmaze/parser.hpp"

#include <algorithm>
#include <array>

namespace turnmaze {

namespace {

bool is_alpha(char c) noexcept { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(char c) noexcept { return is_alpha(c) || (c >= '0' && c <= '9'); }
bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}
char lower(char c) noexcept { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (lower(a[i]) != lower(b[i])) return false;
  return true;
}

bool istarts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

std::size_t ifind(std::string_view s, std::string_view needle) {
  if (needle.size() > s.size()) return std::string_view::npos;
  for (std::size_t i = 0; i + needle.size() <= s.size(); ++i)
    if (iequals(s.substr(i, needle.size()), needle)) return i;
  return std::string_view::npos;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size()) out.push_back(text.substr(pos));
      break;
    }
    out.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  for (auto& line : out)
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.remove_suffix(1);
  return out;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string_view strip_quotes(std::string_view tok) {
  static constexpr std::array<std::string_view, 6> kQuotes = {
      "\"", "'", "`", "\xE2\x80\x9C", "\xE2\x80\x9D", "\xE2\x80\x98"};
  bool changed = true;
  while (changed && !tok.empty()) {
    changed = false;
    tok = trim(tok);
    for (std::string_view q : kQuotes) {
      if (tok.starts_with(q)) {
        tok.remove_prefix(q.size());
        changed = true;
      }
      if (tok.ends_with(q)) {
        tok.remove_suffix(q.size());
        changed = true;
      }
    }
    if (tok.ends_with("\xE2\x80\x99")) {
      tok.remove_suffix(3);
      changed = true;
    }
  }
  return trim(tok);
}

std::variant<Trajectory, ListParseFailure> parse_list_body(std::string_view body) {
  Trajectory out;
  if (trim(body).empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = body.find(',', pos);
    const std::string_view raw =
        body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const std::string_view tok = strip_quotes(raw);
    const auto d = direction_from_word(tok);
    if (!d) return ListParseFailure{ListFailure::invalid_token, std::string(tok)};
    out.push_back(*d);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool mentions_direction(std::string_view body) {
  std::size_t i = 0;
  while (i < body.size()) {
    while (i < body.size() && !is_alpha(body[i])) ++i;
    const std::size_t start = i;
    while (i < body.size() && is_alpha(body[i])) ++i;
    if (i > start && direction_from_word(body.substr(start, i - start))) return true;
  }
  return false;
}

bool is_map_like(std::string_view line) {
  const auto toks = split_tokens(line);
  if (toks.size() < 2) return false;
  for (std::string_view t : toks) {
    if (t.size() > 8) return false;
    int letters = 0;
    for (char c : t) letters += is_alpha(c) ? 1 : 0;
    if (letters > 1) return false;
  }
  return true;
}

// True when the letter at `pos` follows an answer cue such as "answer:",
// "is", "option" or "choice".
bool preceded_by_cue(std::string_view text, std::size_t pos) {
  std::size_t i = pos;
  bool colon = false;
  while (i > 0) {
    const char c = text[i - 1];
    if (c == ':') {
      colon = true;
      --i;
    } else if (is_space(c) || c == '*' || c == '"' || c == '\'' || c == '(' || c == '`') {
      --i;
    } else {
      break;
    }
  }
  if (colon) return true;
  const std::size_t end = i;
  while (i > 0 && is_alpha(text[i - 1])) --i;
  const std::string_view word = text.substr(i, end - i);
  static constexpr std::array<std::string_view, 6> kCues = {"answer", "is",     "option",
                                                            "choice", "letter", "choose"};
  for (std::string_view cue : kCues)
    if (iequals(word, cue)) return true;
  return false;
}

struct Candidate {
  std::size_t pos;
  char letter;
};

std::optional<Candidate> last_letter_candidate(std::string_view text) {
  std::optional<Candidate> best;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    const std::string_view line = text.substr(line_start, line_end - line_start);
    if (!is_map_like(line)) {
      for (std::size_t j = 0; j < line.size(); ++j) {
        const char c = line[j];
        const char up = static_cast<char>(c >= 'a' && c <= 'd' ? c - 32 : c);
        if (up < 'A' || up > 'D') continue;
        const bool prev_ok = j == 0 || !is_alnum(line[j - 1]);
        const bool next_ok = j + 1 >= line.size() || !is_alnum(line[j + 1]);
        if (!prev_ok || !next_ok) continue;
        const std::size_t abs = line_start + j;
        const bool parens = j > 0 && line[j - 1] == '(' && j + 1 < line.size() && line[j + 1] == ')';
        bool strong = parens;
        if (!strong && c == up) {
          // A capital "A" starting a sentence ("A path ...") is an article.
          const bool article = c == 'A' && j + 2 < line.size() && line[j + 1] == ' ' &&
                               line[j + 2] >= 'a' && line[j + 2] <= 'z';
          strong = !article || preceded_by_cue(text, abs);
        }
        if (!strong && c != up) {
          const bool next_letter = j + 2 < line.size() && line[j + 1] == ' ' && is_alpha(line[j + 2]);
          strong = preceded_by_cue(text, abs) && !next_letter;
        }
        if (strong) best = Candidate{abs, up};
      }
    }
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  return best;
}

std::optional<char> whole_text_letter(std::string_view text) {
  std::string_view t = trim(text);
  while (!t.empty() && (t.back() == '.' || t.back() == ')' || t.back() == '*')) t.remove_suffix(1);
  while (!t.empty() && (t.front() == '(' || t.front() == '*')) t.remove_prefix(1);
  t = trim(t);
  if (t.size() != 1) return std::nullopt;
  const char up = static_cast<char>(t[0] >= 'a' && t[0] <= 'd' ? t[0] - 32 : t[0]);
  if (up >= 'A' && up <= 'D') return up;
  return std::nullopt;
}

// Position of the last whole-word, case-insensitive occurrence of `word`.
std::optional<std::size_t> last_word(std::string_view text, std::string_view word) {
  std::optional<std::size_t> found;
  if (word.empty()) return found;
  std::size_t i = 0;
  while (i + word.size() <= text.size()) {
    const std::size_t at = ifind(text.substr(i), word);
    if (at == std::string_view::npos) break;
    const std::size_t abs = i + at;
    const bool prev_ok = abs == 0 || !is_alpha(text[abs - 1]);
    const bool next_ok = abs + word.size() >= text.size() || !is_alpha(text[abs + word.size()]);
    if (prev_ok && next_ok) found = abs;
    i = abs + 1;
  }
  return found;
}

std::optional<Direction> first_direction_word(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_alpha(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && is_alpha(text[i])) ++i;
    if (i > start)
      if (auto d = direction_from_word(text.substr(start, i - start))) return d;
  }
  return std::nullopt;
}

// "step12: ..." -> (12, rest). Leading markdown decoration is ignored.
std::optional<std::pair<std::size_t, std::string_view>> step_marker(std::string_view line) {
  std::string_view s = trim(line);
  while (!s.empty() && (s.front() == '*' || s.front() == '#' || s.front() == '-' || s.front() == '>'))
    s = trim(s.substr(1));
  if (!istarts_with(s, "step")) return std::nullopt;
  s.remove_prefix(4);
  s = trim(s);
  std::size_t n = 0, digits = 0;
  while (digits < s.size() && s[digits] >= '0' && s[digits] <= '9' && digits < 9) {
    n = n * 10 + static_cast<std::size_t>(s[digits] - '0');
    ++digits;
  }
  if (digits == 0) return std::nullopt;
  s.remove_prefix(digits);
  while (!s.empty() && s.front() == '*') s.remove_prefix(1);
  if (s.empty() || s.front() != ':') return std::nullopt;
  s.remove_prefix(1);
  while (!s.empty() && s.front() == '*') s.remove_prefix(1);
  return std::make_pair(n, trim(s));
}

bool is_after_line(std::string_view line) {
  std::string_view s = trim(line);
  while (!s.empty() && (s.front() == '*' || s.front() == '#' || s.front() == '-'))
    s = trim(s.substr(1));
  return istarts_with(s, "after step");
}

bool is_map_row(std::string_view line, const GlyphTable& g) {
  const auto toks = split_tokens(line);
  if (toks.empty()) return false;
  for (std::string_view t : toks) {
    if (g.is_glyph(t)) continue;
    if (t.size() > 8) return false;
    for (char c : t)
      if (is_alpha(c)) return false;
  }
  return true;
}

}  // namespace

std::variant<Trajectory, ListParseFailure> parse_direction_list(std::string_view text) {
  struct Group {
    std::size_t open, close;
  };
  std::vector<Group> groups;
  std::size_t open = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '[') {
      open = i;
    } else if (text[i] == ']' && open != std::string_view::npos) {
      groups.push_back({open, i});
      open = std::string_view::npos;
    }
  }
  if (groups.empty()) return ListParseFailure{ListFailure::no_list, {}};
  // Prefer the last group that reads like a direction list; fall back to the
  // last group so a malformed final answer is reported as such.
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    const std::string_view body = text.substr(it->open + 1, it->close - it->open - 1);
    if (trim(body).empty() || mentions_direction(body)) return parse_list_body(body);
  }
  const Group& g = groups.back();
  return parse_list_body(text.substr(g.open + 1, g.close - g.open - 1));
}

std::optional<char> parse_choice(std::string_view text) {
  if (auto c = last_letter_candidate(text)) return c->letter;
  return whole_text_letter(text);
}

std::optional<char> parse_instance_choice(const TaskInstance& inst, std::string_view text) {
  std::optional<Candidate> best = last_letter_candidate(text);
  for (const auto& [letter, option] : instance_options(inst)) {
    const bool wordy = !option.empty() && std::all_of(option.begin(), option.end(), is_alpha);
    if (!wordy) continue;
    if (auto pos = last_word(text, option); pos && (!best || *pos > best->pos))
      best = Candidate{*pos, letter};
  }
  if (best) return best->letter;
  return whole_text_letter(text);
}

std::string_view to_string(ResponseKind k) noexcept {
  switch (k) {
    case ResponseKind::direction_list:
      return "direction_list";
    case ResponseKind::choice:
      return "choice";
    case ResponseKind::star_session:
      return "star_session";
    case ResponseKind::unparseable:
      return "unparseable";
  }
  return "?";
}

std::string_view to_string(ViolationKind k) noexcept {
  switch (k) {
    case ViolationKind::logical_inconsistency:
      return "logical_inconsistency";
    case ViolationKind::constraint_violation:
      return "constraint_violation";
    case ViolationKind::structural_corruption:
      return "structural_corruption";
  }
  return "?";
}

Json ParsedResponse::to_json() const {
  Json j;
  j["kind"] = std::string(to_string(kind));
  j["trajectory"] = trajectory ? trajectory_to_json(*trajectory) : Json(nullptr);
  j["choice"] = choice ? Json(std::string(1, *choice)) : Json(nullptr);
  if (session) {
    Json steps = Json::array();
    for (const StarStep& s : session->steps)
      steps.push_back({{"description", s.description},
                       {"move", std::string(to_string(s.move))},
                       {"map_after", s.map_after}});
    j["session"] = {{"steps", steps},
                    {"summary", session->summary ? trajectory_to_json(*session->summary)
                                                 : Json(nullptr)}};
  } else {
    j["session"] = nullptr;
  }
  j["diagnostics"] = diagnostics;
  return j;
}

ParsedResponse parse_star_session(std::string_view text, const GlyphTable& g) {
  ParsedResponse out;
  StarSession session;
  const std::vector<std::string_view> lines = split_lines(text);
  bool saw_marker = false;
  std::size_t expected = 1;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    if (ifind(line, "summary of steps") != std::string_view::npos) {
      auto list = parse_direction_list(line);
      if (std::holds_alternative<ListParseFailure>(list)) {
        std::string rest;
        for (std::size_t k = i; k < lines.size(); ++k) rest.append(lines[k]).append("\n");
        list = parse_direction_list(rest);
      }
      if (auto* t = std::get_if<Trajectory>(&list))
        session.summary = *t;
      else
        out.diagnostics.push_back("summary list could not be parsed");
      continue;
    }
    const auto marker = step_marker(line);
    if (!marker) continue;
    saw_marker = true;
    if (marker->first != expected)
      out.diagnostics.push_back("step " + std::to_string(marker->first) + " out of sequence");
    expected = marker->first + 1;
    const auto move = first_direction_word(marker->second);
    if (!move) {
      out.diagnostics.push_back("step " + std::to_string(marker->first) + " names no move");
      continue;
    }
    StarStep step;
    step.description = std::string(marker->second);
    step.move = *move;
    std::size_t j = i + 1;
    if (j < lines.size() && is_after_line(lines[j])) ++j;
    while (j < lines.size() && trim(lines[j]).empty()) ++j;
    std::size_t rows = 0;
    while (j < lines.size() && !trim(lines[j]).empty() && !step_marker(lines[j]) &&
           !is_after_line(lines[j]) && is_map_row(lines[j], g)) {
      step.map_after.append(trim(lines[j])).append("\n");
      ++rows;
      ++j;
    }
    if (rows == 0)
      out.diagnostics.push_back("step " + std::to_string(marker->first) + " has no map");
    session.steps.push_back(std::move(step));
    i = j - 1;
  }
  if (!saw_marker && !session.summary) {
    out.diagnostics.push_back("no step markers and no summary list");
    return out;
  }
  if (session.summary && !session.steps.empty() && *session.summary != session.moves())
    out.diagnostics.push_back("summary disagrees with the step moves");
  out.kind = ResponseKind::star_session;
  out.trajectory = session.summary ? *session.summary : session.moves();
  out.session = std::move(session);
  return out;
}

ParsedResponse parse_route_response(std::string_view text) {
  ParsedResponse out;
  auto list = parse_direction_list(text);
  if (auto* t = std::get_if<Trajectory>(&list)) {
    out.kind = ResponseKind::direction_list;
    out.trajectory = std::move(*t);
    return out;
  }
  const auto& f = std::get<ListParseFailure>(list);
  out.diagnostics.push_back(f.reason == ListFailure::no_list
                                ? std::string("no bracketed list")
                                : "invalid token \"" + f.token + "\"");
  return out;
}

ParsedResponse parse_choice_response(std::string_view text) {
  ParsedResponse out;
  if (auto c = parse_choice(text)) {
    out.kind = ResponseKind::choice;
    out.choice = *c;
  } else {
    out.diagnostics.push_back("no option letter");
  }
  return out;
}

bool ConsistencyReport::has(ViolationKind k) const noexcept {
  return std::any_of(violations.begin(), violations.end(),
                     [k](const Violation& v) { return v.kind == k; });
}

Json ConsistencyReport::to_json() const {
  Json arr = Json::array();
  for (const Violation& v : violations)
    arr.push_back({{"step", v.step}, {"kind", std::string(to_string(v.kind))},
                   {"detail", v.detail}});
  return Json{{"violations", arr}};
}

ConsistencyReport check_consistency(const Maze& maze, const StarSession& session,
                                    const GlyphTable& g) {
  ConsistencyReport report;
  const std::string reference = render_map(maze, std::nullopt, g);
  std::vector<std::vector<std::string_view>> ref_rows;
  for (std::string_view line : split_lines(reference)) ref_rows.push_back(split_tokens(line));

  const std::vector<DriftStep> path = drift(maze, maze.start, session.moves());
  for (std::size_t i = 0; i < session.steps.size(); ++i) {
    const StarStep& step = session.steps[i];
    const DriftStep& at = path[i];
    if (at.status != MoveStatus::ok)
      report.violations.push_back({i + 1, ViolationKind::constraint_violation,
                                   "move " + std::string(to_string(step.move)) + ": " +
                                       std::string(to_string(at.status))});
    if (step.map_after.empty()) continue;

    std::vector<std::vector<std::string_view>> rows;
    for (std::string_view line : split_lines(step.map_after))
      if (!trim(line).empty()) rows.push_back(split_tokens(line));
    bool dims_ok = rows.size() == ref_rows.size();
    for (std::size_t r = 0; dims_ok && r < rows.size(); ++r)
      dims_ok = rows[r].size() == ref_rows[r].size();
    if (!dims_ok) {
      report.violations.push_back({i + 1, ViolationKind::structural_corruption,
                                   "map dimensions differ from the maze"});
      continue;
    }
    std::vector<Coord> icons;
    bool corrupted = false;
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        if (rows[r][c] == g.user_icon) {
          icons.push_back({static_cast<int>(r), static_cast<int>(c)});
          continue;
        }
        if (rows[r][c] != ref_rows[r][c]) corrupted = true;
      }
    if (icons.size() != 1 || icons.front() != at.position)
      report.violations.push_back(
          {i + 1, ViolationKind::logical_inconsistency,
           icons.size() == 1 ? "icon at " + to_string(icons.front()) + ", moves imply " +
                                   to_string(at.position)
                             : std::to_string(icons.size()) + " icons on the map"});
    if (corrupted)
      report.violations.push_back({i + 1, ViolationKind::structural_corruption,
                                   "static cells differ from the maze"});
  }
  return report;
}

}  // namespace turnmaze
