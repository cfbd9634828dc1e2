// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include <httplib.h>

#include <atomic>
#include <nlohmann/json.hpp>
#include <thread>

#include "zoomground/backend.hpp"

namespace zoomground {
namespace {

using json = nlohmann::json;

constexpr std::string_view kDefaultPath = "/v1/chat/completions";

std::string next_request_id(const std::string& model) {
  static std::atomic<std::uint64_t> counter{0};
  return model + "-" + std::to_string(++counter);
}

// Splits scheme://host[:port][/path] into the client base URL and the path.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  const auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("endpoint needs a scheme: " + endpoint);
  }
  const auto path_start = endpoint.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    return {endpoint, std::string(kDefaultPath)};
  }
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

bool transient_status(int status) { return status == 429 || status >= 500; }

}  // namespace

HttpChatBackend::HttpChatBackend(BackendConfig cfg)
    : cfg_(std::move(cfg)), limiter_(cfg_.max_parallel) {
  cfg_.validate();
  std::tie(base_url_, path_) = split_endpoint(cfg_.endpoint);
}

std::string HttpChatBackend::request_body(const PromptBundle& bundle) const {
  json user_content = json::array();
  if (bundle.image) {
    user_content.push_back(
        {{"type", "image_url"},
         {"image_url", {{"url", to_png_data_uri(*bundle.image)}}}});
  }
  user_content.push_back({{"type", "text"}, {"text", bundle.user_text}});

  json body = {
      {"model", cfg_.model_name},
      {"temperature", cfg_.temperature},
      {"max_tokens", cfg_.max_tokens},
      {"messages",
       json::array({{{"role", "system"}, {"content", bundle.system_text}},
                    {{"role", "user"}, {"content", user_content}}})},
  };
  return body.dump();
}

std::optional<std::string> HttpChatBackend::extract_text(const std::string& body) {
  const json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (!doc.is_object()) return std::nullopt;
  const auto choices = doc.find("choices");
  if (choices == doc.end() || !choices->is_array() || choices->empty()) {
    return std::nullopt;
  }
  const json& first = (*choices)[0];
  if (!first.is_object() || !first.contains("message")) return std::nullopt;
  const json& message = first["message"];
  if (!message.is_object() || !message.contains("content")) return std::nullopt;
  const json& content = message["content"];

  if (content.is_string()) return content.get<std::string>();
  if (content.is_array()) {
    std::string text;
    bool any = false;
    for (const auto& part : content) {
      if (part.is_object() && part.value("type", "") == "text" &&
          part.contains("text") && part["text"].is_string()) {
        text += part["text"].get<std::string>();
        any = true;
      }
    }
    if (any) return text;
  }
  return std::nullopt;
}

CompletionOutcome HttpChatBackend::complete(const PromptBundle& bundle) {
  auto permit = limiter_.acquire();

  const std::string request_id = next_request_id(cfg_.model_name);
  const std::string body = request_body(bundle);
  const auto started = std::chrono::steady_clock::now();

  httplib::Client client(base_url_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
      cfg_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  httplib::Headers headers = {{"X-Request-Id", request_id}};
  if (!cfg_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + cfg_.api_key);
  }

  std::string last_failure;
  bool last_was_status = false;
  const int attempts = cfg_.max_retries + 1;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(cfg_.backoff_base * (1 << (attempt - 2)));
    }
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      last_failure = "transport failure: " + httplib::to_string(res.error());
      last_was_status = false;
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_failure = "HTTP status " + std::to_string(res->status);
      last_was_status = true;
      if (transient_status(res->status)) continue;
      throw BackendError(BackendErrorKind::protocol, request_id, last_failure);
    }
    auto text = extract_text(res->body);
    if (!text) {
      throw BackendError(BackendErrorKind::malformed_response, request_id,
                         "response has no assistant text content");
    }
    const auto elapsed = std::chrono::steady_clock::now() - started;
    return {std::move(*text),
            std::chrono::duration<double, std::milli>(elapsed).count(), attempt,
            request_id};
  }
  throw BackendError(
      last_was_status ? BackendErrorKind::protocol : BackendErrorKind::timeout,
      request_id,
      last_failure + " after " + std::to_string(attempts) + " attempt(s)");
}

}  // namespace zoomground
