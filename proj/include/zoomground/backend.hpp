// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

// Transport to vision-language-model backends. A backend only moves text:
// it returns the assistant message verbatim and never interprets it.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "zoomground/prompts.hpp"

namespace zoomground {

struct BackendConfig {
  std::string endpoint;  // e.g. http://localhost:8000/v1/chat/completions
  std::string model_name;
  std::chrono::milliseconds timeout{60'000};
  int max_retries = 2;
  int max_parallel = 4;
  std::string api_key;  // resolved from the environment by the config loader
  double temperature = 0.0;
  int max_tokens = 512;
  std::chrono::milliseconds backoff_base{200};

  /// Throws std::invalid_argument unless timeout > 0, max_parallel >= 1 and
  /// max_retries >= 0.
  void validate() const;
};

struct CompletionOutcome {
  std::string text;
  double latency_ms = 0.0;
  int attempt_count = 0;
  std::string request_id;
};

enum class BackendErrorKind { timeout, protocol, malformed_response };

class BackendError : public std::runtime_error {
 public:
  BackendError(BackendErrorKind kind, std::string request_id,
               const std::string& message);

  [[nodiscard]] BackendErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::string& request_id() const noexcept {
    return request_id_;
  }

 private:
  BackendErrorKind kind_;
  std::string request_id_;
};

[[nodiscard]] std::string_view to_string(BackendErrorKind k) noexcept;

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;

  /// Sends one chat request and returns the first assistant text. Throws
  /// BackendError on failure. Safe to call concurrently.
  virtual CompletionOutcome complete(const PromptBundle& bundle) = 0;

  [[nodiscard]] virtual std::string model_name() const = 0;
};

/// Caps the number of callers inside a section at once.
class ConcurrencyLimiter {
 public:
  explicit ConcurrencyLimiter(int max_parallel);

  class Permit {
   public:
    explicit Permit(ConcurrencyLimiter& limiter) : limiter_(&limiter) {
      limiter_->slots_.acquire();
    }
    ~Permit() { limiter_->slots_.release(); }
    Permit(const Permit&) = delete;
    Permit& operator=(const Permit&) = delete;

   private:
    ConcurrencyLimiter* limiter_;
  };

  [[nodiscard]] Permit acquire() { return Permit(*this); }
  [[nodiscard]] int max_parallel() const noexcept { return max_parallel_; }

 private:
  int max_parallel_;
  std::counting_semaphore<> slots_;
};

/// Wraps another backend and enforces max_parallel in-flight requests.
class LimitedBackend final : public ChatBackend {
 public:
  LimitedBackend(std::shared_ptr<ChatBackend> inner, int max_parallel);

  CompletionOutcome complete(const PromptBundle& bundle) override;
  [[nodiscard]] std::string model_name() const override {
    return inner_->model_name();
  }

 private:
  std::shared_ptr<ChatBackend> inner_;
  ConcurrencyLimiter limiter_;
};

/// OpenAI-style chat-completions client over HTTP(S). The screenshot travels
/// inline as a base64 PNG data URI.
class HttpChatBackend final : public ChatBackend {
 public:
  explicit HttpChatBackend(BackendConfig cfg);

  CompletionOutcome complete(const PromptBundle& bundle) override;
  [[nodiscard]] std::string model_name() const override {
    return cfg_.model_name;
  }

  /// The JSON request body for a bundle (exposed for wire-format tests).
  [[nodiscard]] std::string request_body(const PromptBundle& bundle) const;

  /// Extracts the first assistant text from a response body. Returns nullopt
  /// when the body has no text content.
  [[nodiscard]] static std::optional<std::string> extract_text(
      const std::string& body);

 private:
  BackendConfig cfg_;
  std::string base_url_;  // scheme://host[:port]
  std::string path_;
  ConcurrencyLimiter limiter_;
};

// ---------------------------------------------------------------------------
// Deterministic test double

/// One scripted answer: either text or a transport failure.
struct MockReply {
  std::string text;
  std::optional<BackendErrorKind> failure;

  static MockReply ok(std::string t) { return {std::move(t), std::nullopt}; }
  static MockReply fail(BackendErrorKind k) { return {{}, k}; }
};

/// Thrown when a mock receives a request its script has no answer for.
class MockScriptExhausted : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Replies keyed by prompt (FNV-1a hash of the user text), consumed in order
/// per prompt, with an ordinal queue used for prompts that have no entry.
class MockScript {
 public:
  MockScript& then(MockReply reply);
  MockScript& then(std::string text) { return then(MockReply::ok(std::move(text))); }
  MockScript& on_prompt(std::string_view user_text, MockReply reply);
  MockScript& on_prompt(std::string_view user_text, std::string text) {
    return on_prompt(user_text, MockReply::ok(std::move(text)));
  }

  [[nodiscard]] static std::uint64_t prompt_hash(std::string_view user_text) noexcept;

 private:
  friend class MockBackend;
  std::deque<MockReply> ordinal_;
  std::unordered_map<std::uint64_t, std::deque<MockReply>> keyed_;
};

struct RecordedRequest {
  std::size_t ordinal = 0;
  std::string system_text;
  std::string user_text;
  std::optional<ImageSize> image_size;
  std::uint64_t image_digest = 0;
};

class MockBackend final : public ChatBackend {
 public:
  explicit MockBackend(MockScript script, std::string model = "mock",
                       std::chrono::milliseconds latency = {});

  CompletionOutcome complete(const PromptBundle& bundle) override;
  [[nodiscard]] std::string model_name() const override { return model_; }

  [[nodiscard]] std::vector<RecordedRequest> requests() const;
  [[nodiscard]] std::size_t call_count() const;
  /// Highest number of requests observed in flight at the same time.
  [[nodiscard]] int max_in_flight() const noexcept { return max_in_flight_.load(); }

 private:
  std::string model_;
  std::chrono::milliseconds latency_;
  mutable std::mutex mu_;
  MockScript script_;
  std::vector<RecordedRequest> log_;
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
};

}  // namespace zoomground
