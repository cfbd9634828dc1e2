// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include "zoomground/backend.hpp"

namespace zoomground {

void BackendConfig::validate() const {
  if (timeout.count() <= 0) throw std::invalid_argument("backend timeout must be > 0");
  if (max_parallel < 1) throw std::invalid_argument("max_parallel must be >= 1");
  if (max_retries < 0) throw std::invalid_argument("max_retries must be >= 0");
}

BackendError::BackendError(BackendErrorKind kind, std::string request_id,
                           const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " [" + request_id +
                         "]: " + message),
      kind_(kind),
      request_id_(std::move(request_id)) {}

std::string_view to_string(BackendErrorKind k) noexcept {
  switch (k) {
    case BackendErrorKind::timeout: return "timeout";
    case BackendErrorKind::protocol: return "protocol_error";
    case BackendErrorKind::malformed_response: return "malformed_response";
  }
  return "unknown";
}

namespace {

int checked_parallel(int n) {
  if (n < 1) throw std::invalid_argument("max_parallel must be >= 1");
  return n;
}

}  // namespace

ConcurrencyLimiter::ConcurrencyLimiter(int max_parallel)
    : max_parallel_(checked_parallel(max_parallel)), slots_(max_parallel) {}

LimitedBackend::LimitedBackend(std::shared_ptr<ChatBackend> inner,
                               int max_parallel)
    : inner_(std::move(inner)), limiter_(max_parallel) {}

CompletionOutcome LimitedBackend::complete(const PromptBundle& bundle) {
  auto permit = limiter_.acquire();
  return inner_->complete(bundle);
}

}  // namespace zoomground
