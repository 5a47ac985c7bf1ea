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
#include <httplib.h>

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "turnmaze/endpoint.hpp"
#include "turnmaze/errors.hpp"

namespace turnmaze {
namespace {

// Loopback OpenAI-style server; the handler decides each reply.
class StubServer {
 public:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  explicit StubServer(Handler chat, Handler completions = {}) {
    server_.Post("/v1/chat/completions", [chat](const auto& req, auto& res) { chat(req, res); });
    if (completions)
      server_.Post("/v1/completions",
                   [completions](const auto& req, auto& res) { completions(req, res); });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

EndpointConfig config_for(const StubServer& s) {
  EndpointConfig c;
  c.base_url = s.base_url();
  c.model = "stub-model";
  c.timeout_ms = 5000;
  return c;
}

void reply(httplib::Response& res, const std::string& text) {
  const Json body{{"choices", Json::array({{{"index", 0},
                                            {"message", {{"role", "assistant"}, {"content", text}}}}})}};
  res.set_content(body.dump(), "application/json");
}

TEST(Wire, ChatRequestAndResponse) {
  ::setenv("TURNMAZE_TEST_TOKEN", "sekret", 1);
  std::mutex mu;
  Json seen;
  std::string auth;
  StubServer server([&](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(mu);
    seen = Json::parse(req.body);
    auth = req.get_header_value("Authorization");
    reply(res, "Answer: B");
  });
  EndpointConfig cfg = config_for(server);
  cfg.token_env = "TURNMAZE_TEST_TOKEN";
  HttpChatEndpoint ep(cfg);
  const CallResult r = ep.chat("hello maze");
  EXPECT_EQ(r.status, CallStatus::ok) << r.error;
  EXPECT_EQ(r.text, "Answer: B");
  std::lock_guard lock(mu);
  EXPECT_EQ(auth, "Bearer sekret");
  EXPECT_EQ(seen["model"], "stub-model");
  ASSERT_EQ(seen["messages"].size(), 1u);
  EXPECT_EQ(seen["messages"][0]["role"], "user");
  EXPECT_EQ(seen["messages"][0]["content"], "hello maze");
  EXPECT_EQ(seen["temperature"], 0.0);
}

TEST(Wire, StatusClassification) {
  std::atomic<int> next_status{503};
  StubServer server([&](const httplib::Request&, httplib::Response& res) {
    res.status = next_status.load();
    if (res.status == 429)
      res.set_content(R"({"error": {"code": "insufficient_quota"}})", "application/json");
    else if (res.status == 200)
      res.set_content("not json", "text/plain");
  });
  HttpChatEndpoint ep(config_for(server));
  EXPECT_EQ(ep.chat("x").status, CallStatus::transient);
  next_status = 429;
  EXPECT_EQ(ep.chat("x").status, CallStatus::quota);
  next_status = 402;
  EXPECT_EQ(ep.chat("x").status, CallStatus::quota);
  next_status = 401;
  EXPECT_EQ(ep.chat("x").status, CallStatus::unreachable);
  next_status = 200;
  EXPECT_EQ(ep.chat("x").status, CallStatus::transient);
}

TEST(Wire, ClosedPortIsUnreachable) {
  // Port 1 is privileged and never served in the test environment.
  EndpointConfig cfg;
  cfg.base_url = "http://127.0.0.1:1/v1";
  cfg.timeout_ms = 1000;
  EXPECT_EQ(HttpChatEndpoint(cfg).chat("x").status, CallStatus::unreachable);
}

TEST(Wire, ContinuationLogprob) {
  StubServer server([](const httplib::Request&, httplib::Response& res) { reply(res, ""); },
                    [](const httplib::Request& req, httplib::Response& res) {
                      const Json in = Json::parse(req.body);
                      EXPECT_EQ(in["echo"], true);
                      EXPECT_EQ(in["max_tokens"], 0);
                      const std::string prompt = in["prompt"];
                      // One token per character; each scores -0.5.
                      Json lp{{"token_logprobs", Json::array()}, {"text_offset", Json::array()}};
                      for (std::size_t i = 0; i < prompt.size(); ++i) {
                        lp["token_logprobs"].push_back(i == 0 ? Json(nullptr) : Json(-0.5));
                        lp["text_offset"].push_back(i);
                      }
                      res.set_content(Json{{"choices", Json::array({{{"logprobs", lp}}})}}.dump(),
                                      "application/json");
                    });
  EndpointConfig cfg = config_for(server);
  HttpChatEndpoint without(cfg);
  EXPECT_FALSE(without.continuation_logprob("ctx", "abc"));
  cfg.logprobs = true;
  HttpChatEndpoint ep(cfg);
  const auto r = ep.continuation_logprob("ctx", "abcd");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, CallStatus::ok) << r->error;
  EXPECT_DOUBLE_EQ(r->logprob, -2.0);
}

TEST(Config, ValidationAndTokenPolicy) {
  EXPECT_THROW(EndpointConfig::from_json(Json{{"base_url", "http://x"}, {"token", "abc"}}),
               ConfigError);
  EXPECT_THROW(EndpointConfig::from_json(Json{{"base_url", "http://x"}, {"max_concurrency", 0}}),
               ConfigError);
  EXPECT_THROW(EndpointConfig::from_json(Json{{"base_url", "http://x"}, {"timeout_ms", 0}}),
               ConfigError);
  EXPECT_THROW(EndpointConfig::from_json(Json{{"base_url", "no-scheme"}}), ConfigError);
  const EndpointConfig c =
      EndpointConfig::from_json(Json{{"base_url", "http://x/v1"}, {"token_env", "KEY"}});
  const Json j = c.to_json();
  EXPECT_FALSE(j.contains("token"));
  EXPECT_EQ(EndpointConfig::from_json(j).to_json(), j);
}

TEST(Status, Table) {
  EXPECT_EQ(classify_http_status(200), CallStatus::ok);
  EXPECT_EQ(classify_http_status(429), CallStatus::transient);
  EXPECT_EQ(classify_http_status(500), CallStatus::transient);
  EXPECT_EQ(classify_http_status(408), CallStatus::transient);
  EXPECT_EQ(classify_http_status(402), CallStatus::quota);
  EXPECT_EQ(classify_http_status(404), CallStatus::unreachable);
}

TEST(Body, ResponseTextShapes) {
  EXPECT_EQ(chat_response_text(Json::parse(R"({"choices":[{"message":{"content":"hi"}}]})")), "hi");
  EXPECT_EQ(chat_response_text(Json::parse(R"({"choices":[{"text":"hi"}]})")), "hi");
  EXPECT_FALSE(chat_response_text(Json::parse(R"({"choices":[]})")));
  EXPECT_FALSE(chat_response_text(Json::parse("[1]")));
}

}  // namespace
}  // namespace turnmaze
