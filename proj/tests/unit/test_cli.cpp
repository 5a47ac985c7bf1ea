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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "turnmaze/maze_io.hpp"

namespace turnmaze::cli {
namespace {

struct Out {
  int code = 0;
  std::string out, err;
};

Out run(std::vector<std::string> args) {
  std::ostringstream o, e;
  Out r;
  r.code = dispatch(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One JSON document and nothing else.
Json single_doc(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  EXPECT_FALSE(j.is_discarded()) << text.substr(0, 300);
  return j;
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new oracle::TempDir("cli");
    const auto ds = (dir_->path() / "ds").string();
    ASSERT_EQ(run({"dataset", "--tc", "40", "--ru", "40", "--sr", "200", "--seed", "4",
                   "--out-dir", ds})
                  .code,
              0);
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static std::filesystem::path path(const std::string& name) { return dir_->path() / name; }
  static std::string ds() { return path("ds").string(); }
  static std::string first_id(const std::string& prefix) {
    for (const Json& j : read_jsonl(path("ds") / "train.jsonl"))
      if (j["id"].get<std::string>().rfind(prefix, 0) == 0) return j["id"];
    return {};
  }
  static oracle::TempDir* dir_;
};

oracle::TempDir* CliTest::dir_ = nullptr;

TEST_F(CliTest, UnknownSubcommand) {
  const Out r = run({"frobnicate"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("unknown subcommand 'frobnicate'"), std::string::npos);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(r.err.find('\n') + 1 < r.err.size(), true);
}

TEST_F(CliTest, NoSubcommand) { EXPECT_NE(run({}).code, 0); }

TEST_F(CliTest, HelpExitsZero) {
  const Out r = run({"bench", "--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--endpoint"), std::string::npos);
}

TEST_F(CliTest, Selftest) {
  const Out r = run({"selftest"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  const Json j = single_doc(run({"selftest", "--json"}).out);
  EXPECT_EQ(j["passed"], true);
}

TEST_F(CliTest, GenerateIsSeeded) {
  const auto a = path("a.jsonl").string(), b = path("b.jsonl").string();
  ASSERT_EQ(run({"generate", "--count", "12", "--seed", "9", "--out", a}).code, 0);
  ASSERT_EQ(run({"--seed", "9", "generate", "--count", "12", "--out", b}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(read_jsonl(a).size(), 12u);
  const Json j = single_doc(run({"generate", "--tier", "2", "--count", "2", "--json"}).out);
  EXPECT_EQ(j["mazes"].size(), 2u);
  EXPECT_EQ(j["mazes"][0]["tier"], 2);
}

TEST_F(CliTest, DatasetIsSeeded) {
  const auto a = path("da").string(), b = path("db").string();
  ASSERT_EQ(run({"dataset", "--tc", "20", "--ru", "20", "--sr", "20", "--out-dir", a}).code, 0);
  const Out r = run({"dataset", "--tc", "20", "--ru", "20", "--sr", "20", "--out-dir", b, "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(single_doc(r.out)["instances"], 60);
  for (const char* f : {"train.jsonl", "val.jsonl", "test.jsonl", "manifest.json"})
    EXPECT_EQ(slurp(path("da") / f), slurp(path("db") / f)) << f;
}

TEST_F(CliTest, ConfigPrecedence) {
  const auto cfg = path("cfg.json");
  std::ofstream(cfg) << R"({"seed": 5, "counts": {"turnpoint": 6, "rule": 4, "structured": 2}})";
  const Json from_file = single_doc(
      run({"--config", cfg.string(), "dataset", "--out-dir", path("cfg1").string(), "--json"}).out);
  EXPECT_EQ(from_file["seed"], 5);
  EXPECT_EQ(from_file["instances"], 12);
  const Json flags = single_doc(run({"--config", cfg.string(), "dataset", "--seed", "6", "--tc",
                                     "3", "--out-dir", path("cfg2").string(), "--json"})
                                    .out);
  EXPECT_EQ(flags["seed"], 6);
  EXPECT_EQ(flags["instances"], 9);
  ::setenv("TURNMAZE_CONFIG", cfg.string().c_str(), 1);
  const Json env =
      single_doc(run({"dataset", "--out-dir", path("cfg3").string(), "--json"}).out);
  ::unsetenv("TURNMAZE_CONFIG");
  EXPECT_EQ(env["seed"], 5);
  EXPECT_EQ(config_path(std::string("x.json")), std::filesystem::path("x.json"));
}

TEST_F(CliTest, BadConfigIsAUsageError) {
  const auto cfg = path("bad.json");
  std::ofstream(cfg) << "{not json";
  const Out r = run({"--config", cfg.string(), "selftest"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not valid JSON"), std::string::npos);
}

TEST_F(CliTest, RenderAndParse) {
  const std::string rp = first_id("rp-");
  ASSERT_FALSE(rp.empty());
  const Out prompt = run({"render", "--dataset", ds(), "--instance", rp, "--style", "star"});
  ASSERT_EQ(prompt.code, 0) << prompt.err;
  EXPECT_NE(prompt.out.find("marking your position at S"), std::string::npos);
  const Json j = single_doc(
      run({"render", "--dataset", ds(), "--instance", rp, "--session", "--json"}).out);
  const auto session_file = path("session.txt");
  std::ofstream(session_file) << j["text"].get<std::string>();
  const Json parsed = single_doc(run({"parse", "--kind", "star", "--in", session_file.string(),
                                      "--dataset", ds(), "--instance", rp, "--json"})
                                     .out);
  EXPECT_EQ(parsed["kind"], "star_session");
  EXPECT_EQ(parsed["consistency"]["violations"].size(), 0u);

  const auto choice_file = path("choice.txt");
  std::ofstream(choice_file) << "Therefore, the answer is B.";
  const Out c = run({"parse", "--kind", "choice", "--in", choice_file.string(), "--json"});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(single_doc(c.out)["choice"], "B");
  std::ofstream(choice_file) << "";
  EXPECT_EQ(run({"parse", "--kind", "choice", "--in", choice_file.string(), "--json"}).code, 3);
}

TEST_F(CliTest, BenchScoreReportPipeline) {
  const auto runs = path("runs").string();
  const Out b = run({"bench", "--dataset", ds(), "--split", "val", "--stub", "oracle", "--out",
                     runs, "--json"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(single_doc(b.out)["complete"], true);

  const auto csv = path("report.csv").string();
  const Out s = run({"score", "--dataset", ds(), "--responses",
                     (path("runs") / "responses.jsonl").string(), "--out", csv, "--json"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(slurp(csv), slurp(path("runs") / "table1.csv"));
  for (const Json& a : single_doc(s.out)["aggregates"])
    for (const char* k : {"RP.CR", "RP.SR", "NS.Acc", "TC.Acc", "RU.Acc"})
      if (!a[k].is_null()) EXPECT_EQ(a[k], 100.0);

  const Json rep = single_doc(run({"report", "--runs", runs, "--layout", "all", "--json"}).out);
  EXPECT_EQ(rep["table4"].get<std::string>().rfind("Model,Metric,+CoT,+VoT,+Ours\n", 0), 0u);
  EXPECT_TRUE(rep.contains("table1"));
}

TEST_F(CliTest, SdpoCommands) {
  // Model responses that stop one move early yield premature_stop pairs.
  std::vector<Json> responses;
  for (const Json& j : read_jsonl(path("ds") / "train.jsonl")) {
    if (j["family"] != "route_planning") continue;
    Json path_moves = j["answer_key"];
    path_moves.erase(path_moves.size() - 1);
    std::string text = "The complete path is: [";
    for (std::size_t i = 0; i < path_moves.size(); ++i)
      text += (i ? ", \"" : "\"") + path_moves[i].get<std::string>() + "\"";
    responses.push_back({{"id", j["id"]}, {"raw_text", text + "]"}});
  }
  ASSERT_FALSE(responses.empty());
  write_jsonl(path("resp.jsonl"), responses);
  const Json pairs = single_doc(run({"sdpo", "pairs", "--dataset", ds(), "--responses",
                                     path("resp.jsonl").string(), "--L", "2", "--out",
                                     path("pairs.jsonl").string(), "--json"})
                                    .out);
  EXPECT_EQ(pairs["pairs"], responses.size());
  EXPECT_EQ(pairs["by_kind"]["premature_stop"], responses.size());
  for (const Json& p : read_jsonl(path("pairs.jsonl"))) EXPECT_EQ(p["segment_len"], 2);

  const Json synth = single_doc(run({"sdpo", "synth", "--kinds", "all", "--per-maze", "1",
                                     "--mazes", "12", "--out", path("synth.jsonl").string(),
                                     "--json"})
                                    .out);
  EXPECT_GT(synth["pairs"].get<int>(), 40);
  const Json margins = single_doc(run({"report", "--layout", "margins", "--pairs",
                                       path("synth.jsonl").string(), "--stub", "oracle", "--json"})
                                      .out);
  EXPECT_NE(margins["margins"].get<std::string>().find("premature_stop"), std::string::npos);

  const Json sft = single_doc(
      run({"sdpo", "emit-sft", "--dataset", ds(), "--out", path("sft.jsonl").string(), "--json"})
          .out);
  EXPECT_EQ(sft["records"], read_jsonl(path("sft.jsonl")).size());
}

TEST_F(CliTest, MissingFlagsAreUsageErrors) {
  EXPECT_EQ(run({"score", "--dataset", ds()}).code, 2);
  const Out r = run({"bench", "--dataset", ds(), "--json"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(single_doc(r.out).contains("error"));
}

}  // namespace
}  // namespace turnmaze::cli
