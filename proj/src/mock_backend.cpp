// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include <thread>

#include "zoomground/backend.hpp"

namespace zoomground {

MockScript& MockScript::then(MockReply reply) {
  ordinal_.push_back(std::move(reply));
  return *this;
}

MockScript& MockScript::on_prompt(std::string_view user_text, MockReply reply) {
  keyed_[prompt_hash(user_text)].push_back(std::move(reply));
  return *this;
}

std::uint64_t MockScript::prompt_hash(std::string_view user_text) noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : user_text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

MockBackend::MockBackend(MockScript script, std::string model,
                         std::chrono::milliseconds latency)
    : model_(std::move(model)), latency_(latency), script_(std::move(script)) {}

CompletionOutcome MockBackend::complete(const PromptBundle& bundle) {
  const int now = ++in_flight_;
  int seen = max_in_flight_.load();
  while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
  }
  struct Leave {
    std::atomic<int>& n;
    ~Leave() { --n; }
  } leave{in_flight_};

  if (latency_.count() > 0) std::this_thread::sleep_for(latency_);

  MockReply reply;
  std::size_t ordinal = 0;
  {
    std::lock_guard lock(mu_);
    ordinal = log_.size();
    RecordedRequest rec{ordinal, bundle.system_text, bundle.user_text, {}, 0};
    if (bundle.image) {
      rec.image_size = bundle.image->size();
      rec.image_digest = image_digest(*bundle.image);
    }
    log_.push_back(std::move(rec));

    auto keyed = script_.keyed_.find(MockScript::prompt_hash(bundle.user_text));
    if (keyed != script_.keyed_.end() && !keyed->second.empty()) {
      reply = std::move(keyed->second.front());
      keyed->second.pop_front();
    } else if (!script_.ordinal_.empty()) {
      reply = std::move(script_.ordinal_.front());
      script_.ordinal_.pop_front();
    } else {
      throw MockScriptExhausted("mock script has no reply for request #" +
                                std::to_string(ordinal) + ": " +
                                bundle.user_text);
    }
  }

  const std::string request_id = model_ + "-mock-" + std::to_string(ordinal);
  if (reply.failure) {
    throw BackendError(*reply.failure, request_id, "scripted failure");
  }
  return {std::move(reply.text), 0.0, 1, request_id};
}

std::vector<RecordedRequest> MockBackend::requests() const {
  std::lock_guard lock(mu_);
  return log_;
}

std::size_t MockBackend::call_count() const {
  std::lock_guard lock(mu_);
  return log_.size();
}

}  // namespace zoomground
