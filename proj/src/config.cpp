// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include "zoomground/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace zoomground {
namespace {

using json = nlohmann::json;

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config field '") + key +
                                "' has the wrong type");
  }
}

}  // namespace

BackendSpec BackendSpec::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("backend config must be an object");
  BackendSpec spec;
  const auto type = get_or<std::string>(j, "type", "http");
  if (type == "mock") {
    spec.type = Type::mock;
  } else if (type != "http") {
    throw std::invalid_argument("backend type must be 'http' or 'mock'");
  }

  auto& h = spec.http;
  h.endpoint = get_or<std::string>(j, "endpoint", "");
  h.model_name = get_or<std::string>(j, "model", spec.type == Type::mock ? "mock" : "");
  h.timeout = std::chrono::milliseconds(
      static_cast<long long>(get_or<double>(j, "timeout_s", 60.0) * 1000.0));
  h.max_retries = get_or<int>(j, "max_retries", h.max_retries);
  h.max_parallel = get_or<int>(j, "max_parallel", h.max_parallel);
  h.temperature = get_or<double>(j, "temperature", h.temperature);
  h.max_tokens = get_or<int>(j, "max_tokens", h.max_tokens);
  spec.api_key_env = get_or<std::string>(j, "api_key_env", spec.api_key_env);
  h.validate();

  if (spec.type == Type::http && h.endpoint.empty()) {
    throw std::invalid_argument("http backend needs an 'endpoint'");
  }
  spec.mock_responses = get_or<std::vector<std::string>>(j, "responses", {});
  spec.mock_by_prompt =
      get_or<std::map<std::string, std::vector<std::string>>>(j, "by_prompt", {});
  return spec;
}

std::shared_ptr<ChatBackend> make_backend(const BackendSpec& spec) {
  if (spec.type == BackendSpec::Type::mock) {
    MockScript script;
    for (const auto& r : spec.mock_responses) script.then(r);
    for (const auto& [prompt, replies] : spec.mock_by_prompt) {
      for (const auto& r : replies) script.on_prompt(prompt, r);
    }
    auto mock = std::make_shared<MockBackend>(std::move(script), spec.http.model_name);
    return std::make_shared<LimitedBackend>(std::move(mock), spec.http.max_parallel);
  }
  BackendConfig cfg = spec.http;
  if (!spec.api_key_env.empty()) {
    if (const char* key = std::getenv(spec.api_key_env.c_str())) cfg.api_key = key;
  }
  return std::make_shared<HttpChatBackend>(std::move(cfg));
}

AppConfig AppConfig::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config root must be an object");
  AppConfig cfg;
  if (j.contains("refiner")) cfg.refiner = BackendSpec::from_json(j["refiner"]);
  if (j.contains("grounder")) cfg.grounder = BackendSpec::from_json(j["grounder"]);

  if (const auto p = j.find("pipeline"); p != j.end()) {
    cfg.pipeline.refinement_enabled =
        get_or<bool>(*p, "refinement_enabled", cfg.pipeline.refinement_enabled);
    cfg.pipeline.zoom_mode =
        parse_zoom_mode(get_or<std::string>(*p, "zoom_mode", "conditional"));
    if (const auto z = p->find("zoom"); z != p->end()) {
      cfg.pipeline.zoom.alpha = get_or<double>(*z, "alpha", cfg.pipeline.zoom.alpha);
      cfg.pipeline.zoom.beta = get_or<double>(*z, "beta", cfg.pipeline.zoom.beta);
      cfg.pipeline.zoom.ratio = get_or<double>(*z, "ratio", cfg.pipeline.zoom.ratio);
    }
  }
  cfg.pipeline.validate();

  if (const auto r = j.find("reward"); r != j.end()) {
    const auto mode = get_or<std::string>(*r, "combination", "multiplicative");
    RewardCombination comb = RewardCombination::multiplicative;
    if (mode == "additive") {
      comb = RewardCombination::additive;
    } else if (mode != "multiplicative") {
      throw std::invalid_argument("reward combination must be multiplicative or additive");
    }
    cfg.reward = RewardWeights(get_or<double>(*r, "lambda", 0.5), comb);
  }

  if (const auto a = j.find("augment"); a != j.end()) {
    if (a->contains("backend")) cfg.augmenter = BackendSpec::from_json((*a)["backend"]);
    if (a->contains("templates")) {
      cfg.augment_templates = InstructionTemplates::from_json((*a)["templates"]);
    }
  }
  return cfg;
}

AppConfig AppConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path.string());
  const json j = json::parse(in, nullptr, /*allow_exceptions=*/false,
                             /*ignore_comments=*/true);
  if (j.is_discarded()) throw std::invalid_argument("config is not valid JSON: " + path.string());
  return from_json(j);
}

}  // namespace zoomground
