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

#include "turnmaze/endpoint.hpp"

#include <cstdlib>
#include <fstream>

#include <httplib.h>

#include "turnmaze/errors.hpp"

namespace turnmaze {

void EndpointConfig::validate() const {
  if (base_url.empty()) throw ConfigError("endpoint base_url is required");
  if (base_url.find("://") == std::string::npos)
    throw ConfigError("endpoint base_url needs a scheme: " + base_url);
  if (max_concurrency < 1) throw ConfigError("max_concurrency must be at least 1");
  if (timeout_ms <= 0) throw ConfigError("timeout_ms must be positive");
  if (retries < 0) throw ConfigError("retries must be non-negative");
  if (backoff_ms < 0) throw ConfigError("backoff_ms must be non-negative");
  if (max_tokens < 1) throw ConfigError("max_tokens must be positive");
}

Json EndpointConfig::to_json() const {
  return Json{{"base_url", base_url},       {"model", model},
              {"token_env", token_env},     {"max_concurrency", max_concurrency},
              {"timeout_ms", timeout_ms},   {"retries", retries},
              {"backoff_ms", backoff_ms},   {"logprobs", logprobs},
              {"temperature", temperature}, {"max_tokens", max_tokens}};
}

EndpointConfig EndpointConfig::from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("endpoint config must be a JSON object");
  if (j.contains("token") || j.contains("api_key"))
    throw ConfigError("put the token in an environment variable and name it in token_env");
  EndpointConfig c;
  try {
    c.base_url = j.value("base_url", c.base_url);
    c.model = j.value("model", c.model);
    c.token_env = j.value("token_env", c.token_env);
    c.max_concurrency = j.value("max_concurrency", c.max_concurrency);
    c.timeout_ms = j.value("timeout_ms", c.timeout_ms);
    c.retries = j.value("retries", c.retries);
    c.backoff_ms = j.value("backoff_ms", c.backoff_ms);
    c.logprobs = j.value("logprobs", c.logprobs);
    c.temperature = j.value("temperature", c.temperature);
    c.max_tokens = j.value("max_tokens", c.max_tokens);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("endpoint config: ") + e.what());
  }
  c.validate();
  return c;
}

EndpointConfig EndpointConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open endpoint config " + path.string());
  try {
    return from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("endpoint config " + path.string() + ": " + e.what());
  }
}

std::string_view to_string(CallStatus s) noexcept {
  switch (s) {
    case CallStatus::ok:
      return "ok";
    case CallStatus::transient:
      return "transient";
    case CallStatus::quota:
      return "quota";
    case CallStatus::unreachable:
      return "unreachable";
  }
  return "?";
}

CallStatus classify_http_status(int status) noexcept {
  if (status >= 200 && status < 300) return CallStatus::ok;
  if (status == 402) return CallStatus::quota;
  if (status == 408 || status == 409 || status == 425 || status == 429 || status >= 500)
    return CallStatus::transient;
  return CallStatus::unreachable;
}

Json chat_request_body(const EndpointConfig& cfg, const std::string& prompt) {
  Json body;
  body["model"] = cfg.model;
  body["messages"] = Json::array({Json{{"role", "user"}, {"content", prompt}}});
  body["temperature"] = cfg.temperature;
  body["max_tokens"] = cfg.max_tokens;
  return body;
}

std::optional<std::string> chat_response_text(const Json& body) {
  if (!body.is_object()) return std::nullopt;
  auto choices = body.find("choices");
  if (choices == body.end() || !choices->is_array() || choices->empty()) return std::nullopt;
  const Json& first = choices->front();
  if (auto msg = first.find("message"); msg != first.end() && msg->is_object()) {
    auto content = msg->find("content");
    if (content != msg->end() && content->is_string()) return content->get<std::string>();
    if (content != msg->end() && content->is_null()) return std::string();
  }
  if (auto text = first.find("text"); text != first.end() && text->is_string())
    return text->get<std::string>();
  return std::nullopt;
}

namespace {

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;    // without trailing slash
};

Url split_url(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  const std::size_t path_start = url.find('/', scheme_end + 3);
  Url u;
  u.origin = url.substr(0, path_start);
  if (path_start != std::string::npos) u.path = url.substr(path_start);
  while (!u.path.empty() && u.path.back() == '/') u.path.pop_back();
  return u;
}

struct Posted {
  CallStatus status = CallStatus::ok;
  Json body;
  std::string error;
};

Posted post_json(const EndpointConfig& cfg, const std::string& route, const Json& payload) {
  const Url url = split_url(cfg.base_url);
  Posted out;
  std::unique_ptr<httplib::Client> client;
  try {
    client = std::make_unique<httplib::Client>(url.origin);
  } catch (const std::exception& e) {
    out.status = CallStatus::unreachable;
    out.error = e.what();
    return out;
  }
  if (!client->is_valid()) {
    out.status = CallStatus::unreachable;
    out.error = "unsupported endpoint URL " + cfg.base_url;
    return out;
  }
  const auto secs = cfg.timeout_ms / 1000;
  const auto usecs = (cfg.timeout_ms % 1000) * 1000;
  client->set_connection_timeout(secs, usecs);
  client->set_read_timeout(secs, usecs);
  client->set_write_timeout(secs, usecs);
  httplib::Headers headers;
  if (!cfg.token_env.empty())
    if (const char* token = std::getenv(cfg.token_env.c_str()); token && *token)
      headers.emplace("Authorization", std::string("Bearer ") + token);

  auto res = client->Post(url.path + route, headers, payload.dump(), "application/json");
  if (!res) {
    const auto err = res.error();
    out.status = err == httplib::Error::Connection ? CallStatus::unreachable
                                                   : CallStatus::transient;
    out.error = httplib::to_string(err);
    return out;
  }
  out.status = classify_http_status(res->status);
  Json parsed = Json::parse(res->body, nullptr, false);
  if (out.status != CallStatus::ok) {
    // Providers signal an exhausted budget with 429 and an explanatory code.
    if (res->status == 429 && parsed.is_object() && parsed.contains("error") &&
        parsed["error"].is_object() &&
        parsed["error"].value("code", std::string()) == "insufficient_quota")
      out.status = CallStatus::quota;
    out.error = "HTTP " + std::to_string(res->status);
    return out;
  }
  if (parsed.is_discarded()) {
    out.status = CallStatus::transient;
    out.error = "response body is not JSON";
    return out;
  }
  out.body = std::move(parsed);
  return out;
}

}  // namespace

HttpChatEndpoint::HttpChatEndpoint(EndpointConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

CallResult HttpChatEndpoint::chat(const std::string& prompt) {
  Posted p = post_json(cfg_, "/chat/completions", chat_request_body(cfg_, prompt));
  CallResult r;
  r.status = p.status;
  r.error = std::move(p.error);
  if (r.status != CallStatus::ok) return r;
  if (auto text = chat_response_text(p.body)) {
    r.text = std::move(*text);
  } else {
    r.status = CallStatus::transient;
    r.error = "response has no choices[0].message.content";
  }
  return r;
}

std::optional<LogprobResult> HttpChatEndpoint::continuation_logprob(
    const std::string& context, const std::string& continuation) {
  if (!cfg_.logprobs) return std::nullopt;
  Json body;
  body["model"] = cfg_.model;
  body["prompt"] = context + continuation;
  body["max_tokens"] = 0;
  body["echo"] = true;
  body["logprobs"] = 1;
  body["temperature"] = cfg_.temperature;
  Posted p = post_json(cfg_, "/completions", body);
  LogprobResult r;
  r.status = p.status;
  r.error = std::move(p.error);
  if (r.status != CallStatus::ok) return r;
  try {
    const Json& lp = p.body.at("choices").at(0).at("logprobs");
    const Json& values = lp.at("token_logprobs");
    const Json& offsets = lp.at("text_offset");
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size() && i < offsets.size(); ++i) {
      if (values[i].is_null()) continue;
      if (offsets[i].get<std::size_t>() >= context.size()) sum += values[i].get<double>();
    }
    r.logprob = sum;
  } catch (const nlohmann::json::exception& e) {
    r.status = CallStatus::transient;
    r.error = std::string("malformed logprobs response: ") + e.what();
  }
  return r;
}

}  // namespace turnmaze
