// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "zoomground/backend.hpp"
#include "zoomground/dataset.hpp"
#include "zoomground/pipeline.hpp"
#include "zoomground/reward.hpp"

namespace zoomground {

/// A backend as described in the config file: either an HTTP chat endpoint or
/// a scripted mock (useful for dry runs).
struct BackendSpec {
  enum class Type { http, mock };

  Type type = Type::http;
  BackendConfig http;
  std::string api_key_env = "OPENAI_API_KEY";
  std::vector<std::string> mock_responses;
  std::map<std::string, std::vector<std::string>> mock_by_prompt;

  static BackendSpec from_json(const nlohmann::json& j);
};

[[nodiscard]] std::shared_ptr<ChatBackend> make_backend(const BackendSpec& spec);

struct AppConfig {
  std::optional<BackendSpec> refiner;
  std::optional<BackendSpec> grounder;
  std::optional<BackendSpec> augmenter;
  PipelineConfig pipeline;
  RewardWeights reward;
  InstructionTemplates augment_templates;

  /// Missing sections keep their defaults. Throws std::invalid_argument on
  /// malformed values.
  static AppConfig from_json(const nlohmann::json& j);
  static AppConfig load(const std::filesystem::path& path);
};

}  // namespace zoomground
