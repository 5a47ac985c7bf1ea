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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "turnmaze/maze_io.hpp"

namespace turnmaze {

struct EndpointConfig {
  /// e.g. "http://localhost:8000/v1"; requests go to base_url + "/chat/completions".
  std::string base_url;
  std::string model;
  /// Name of the environment variable holding the bearer token; the token
  /// itself is read at call time and never stored.
  std::string token_env;
  int max_concurrency = 4;
  int timeout_ms = 60000;
  int retries = 3;
  int backoff_ms = 500;
  /// The server accepts echo + logprobs on base_url + "/completions".
  bool logprobs = false;
  double temperature = 0.0;
  int max_tokens = 2048;

  /// Throws ConfigError on bad values.
  void validate() const;
  Json to_json() const;
  static EndpointConfig from_json(const Json& j);
  static EndpointConfig load(const std::filesystem::path& path);
};

enum class CallStatus : std::uint8_t { ok, transient, quota, unreachable };
std::string_view to_string(CallStatus s) noexcept;

struct CallResult {
  CallStatus status = CallStatus::ok;
  std::string text;
  std::string error;
};

struct LogprobResult {
  CallStatus status = CallStatus::ok;
  double logprob = 0.0;
  std::string error;
};

class ChatEndpoint {
 public:
  virtual ~ChatEndpoint() = default;
  virtual CallResult chat(const std::string& prompt) = 0;
  virtual bool supports_chat() const { return true; }
  /// Sum of token log-probabilities of `continuation` after `context`;
  /// nullopt when the endpoint cannot score text.
  virtual std::optional<LogprobResult> continuation_logprob(const std::string& context,
                                                           const std::string& continuation) {
    (void)context;
    (void)continuation;
    return std::nullopt;
  }
};

/// OpenAI-style HTTP endpoint: one user message per request, reply text from
/// choices[0].message.content.
class HttpChatEndpoint : public ChatEndpoint {
 public:
  explicit HttpChatEndpoint(EndpointConfig cfg);
  CallResult chat(const std::string& prompt) override;
  std::optional<LogprobResult> continuation_logprob(const std::string& context,
                                                   const std::string& continuation) override;

  const EndpointConfig& config() const noexcept { return cfg_; }

 private:
  EndpointConfig cfg_;
};

/// In-process endpoint backed by a function; used for stubs and tests.
class CallbackEndpoint : public ChatEndpoint {
 public:
  using ChatFn = std::function<CallResult(const std::string&)>;
  using LogprobFn = std::function<LogprobResult(const std::string&, const std::string&)>;

  explicit CallbackEndpoint(ChatFn chat, LogprobFn logprob = {})
      : chat_(std::move(chat)), logprob_(std::move(logprob)) {}

  CallResult chat(const std::string& prompt) override {
    if (!chat_) return {CallStatus::unreachable, {}, "no chat function"};
    return chat_(prompt);
  }
  bool supports_chat() const override { return static_cast<bool>(chat_); }
  std::optional<LogprobResult> continuation_logprob(const std::string& context,
                                                   const std::string& continuation) override {
    if (!logprob_) return std::nullopt;
    return logprob_(context, continuation);
  }

 private:
  ChatFn chat_;
  LogprobFn logprob_;
};

/// 2xx ok; 408, 409, 425, 429 and 5xx transient; 402 quota; anything else
/// unreachable (bad URL, auth or route).
CallStatus classify_http_status(int status) noexcept;

/// Request body for the chat wire contract.
Json chat_request_body(const EndpointConfig& cfg, const std::string& prompt);
/// choices[0].message.content, or nullopt when the body does not match.
std::optional<std::string> chat_response_text(const Json& body);

}  // namespace turnmaze
