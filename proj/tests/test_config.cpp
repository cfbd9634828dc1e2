// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>

#include "zoomground/config.hpp"

namespace zoomground {
namespace {

using nlohmann::json;

TEST(AppConfig, ShippedConfigsLoad) {
  const auto cfg = AppConfig::load(std::string(ZG_SOURCE_DIR) + "/config/default.json");
  ASSERT_TRUE(cfg.grounder.has_value());
  ASSERT_TRUE(cfg.refiner.has_value());
  EXPECT_EQ(cfg.grounder->type, BackendSpec::Type::http);
  EXPECT_EQ(cfg.grounder->http.timeout, std::chrono::milliseconds(60'000));
  EXPECT_EQ(cfg.pipeline.zoom, ZoomConfig{});
  EXPECT_EQ(cfg.pipeline.zoom_mode, ZoomMode::conditional);
  EXPECT_EQ(cfg.reward.lambda(), 0.5);
  EXPECT_EQ(cfg.augment_templates.user_templates.size(), 4u);

  const auto mock = AppConfig::load(std::string(ZG_SOURCE_DIR) + "/config/mock_example.json");
  EXPECT_EQ(mock.grounder->type, BackendSpec::Type::mock);
}

TEST(AppConfig, SectionsOverrideDefaults) {
  const auto cfg = AppConfig::from_json(json::parse(R"({
    "pipeline": {"refinement_enabled": false, "zoom_mode": "always",
                 "zoom": {"alpha": 50, "beta": 150, "ratio": 3}},
    "reward": {"lambda": 0.8, "combination": "additive"}
  })"));
  EXPECT_FALSE(cfg.pipeline.refinement_enabled);
  EXPECT_EQ(cfg.pipeline.zoom_mode, ZoomMode::always);
  EXPECT_EQ(cfg.pipeline.zoom, (ZoomConfig{50, 150, 3}));
  EXPECT_EQ(cfg.reward.lambda(), 0.8);
  EXPECT_EQ(cfg.reward.combination(), RewardCombination::additive);
  EXPECT_FALSE(cfg.grounder.has_value());
}

TEST(AppConfig, RejectsInvalidValues) {
  EXPECT_THROW((void)AppConfig::from_json(json::parse(R"({"reward": {"lambda": 2}})")),
               std::invalid_argument);
  EXPECT_THROW((void)AppConfig::from_json(
                   json::parse(R"({"pipeline": {"zoom": {"alpha": 400, "beta": 300}}})")),
               std::invalid_argument);
  EXPECT_THROW((void)AppConfig::from_json(json::parse(R"({"pipeline": {"zoom_mode": "x"}})")),
               std::invalid_argument);
  EXPECT_THROW((void)AppConfig::from_json(json::parse(R"({"grounder": {"type": "http"}})")),
               std::invalid_argument);
  EXPECT_THROW((void)AppConfig::from_json(
                   json::parse(R"({"grounder": {"type": "mock", "max_parallel": 0}})")),
               std::invalid_argument);
  EXPECT_THROW((void)AppConfig::from_json(
                   json::parse(R"({"grounder": {"type": "mock", "max_retries": "two"}})")),
               std::invalid_argument);
  EXPECT_THROW((void)AppConfig::load("/nonexistent/config.json"), std::runtime_error);
}

TEST(MakeBackend, MockRepliesFromConfig) {
  const auto spec = BackendSpec::from_json(json::parse(R"({
    "type": "mock", "model": "scripted",
    "responses": ["one", "two"],
    "by_prompt": {"keyed prompt": ["special"]}
  })"));
  auto backend = make_backend(spec);
  EXPECT_EQ(backend->model_name(), "scripted");
  PromptBundle keyed{"sys", "keyed prompt", nullptr};
  PromptBundle other{"sys", "anything", nullptr};
  EXPECT_EQ(backend->complete(other).text, "one");
  EXPECT_EQ(backend->complete(keyed).text, "special");
  EXPECT_EQ(backend->complete(keyed).text, "two");
  EXPECT_THROW((void)backend->complete(other), MockScriptExhausted);
}

TEST(MakeBackend, HttpKeyComesFromEnvironment) {
  ::setenv("ZOOMGROUND_TEST_KEY", "k-123", 1);
  const auto spec = BackendSpec::from_json(json::parse(R"({
    "endpoint": "http://127.0.0.1:9/v1/chat/completions", "model": "g",
    "api_key_env": "ZOOMGROUND_TEST_KEY", "timeout_s": 0.5
  })"));
  EXPECT_EQ(spec.http.timeout, std::chrono::milliseconds(500));
  EXPECT_TRUE(spec.http.api_key.empty());
  auto backend = make_backend(spec);
  EXPECT_EQ(backend->model_name(), "g");
  ::unsetenv("ZOOMGROUND_TEST_KEY");
}

}  // namespace
}  // namespace zoomground
