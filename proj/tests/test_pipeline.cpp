// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>

#include "test_support.hpp"
#include "zoomground/pipeline.hpp"

namespace zoomground {
namespace {

using testing::answer;
using testing::null_answer;

const auto kScreen = testing::pattern_image(1920, 1080);

struct Rig {
  std::shared_ptr<MockBackend> grounder;
  std::shared_ptr<MockBackend> refiner;
  Pipeline pipeline;
};

Rig make_rig(MockScript grounder_script, PipelineConfig cfg = {},
             MockScript refiner_script = MockScript{}) {
  auto g = std::make_shared<MockBackend>(std::move(grounder_script), "grounder");
  auto r = std::make_shared<MockBackend>(std::move(refiner_script), "refiner");
  return {g, r, Pipeline(cfg, g, r)};
}

PipelineConfig no_refine(ZoomMode mode = ZoomMode::conditional) {
  PipelineConfig cfg;
  cfg.refinement_enabled = false;
  cfg.zoom_mode = mode;
  return cfg;
}

TEST(Pipeline, LargeBoxIsSinglePass) {
  auto rig = make_rig(MockScript{}.then(answer({500, 400}, {400, 200, 600, 600})),
                      no_refine());
  const auto r = rig.pipeline.ground("open the editor", kScreen);
  EXPECT_FALSE(r.zoom_applied);
  EXPECT_EQ(rig.grounder->call_count(), 1u);
  EXPECT_EQ(rig.refiner->call_count(), 0u);
  EXPECT_EQ(r.final_point, (PixelPoint{500, 400}));
  EXPECT_EQ(r.final_box, (PixelBox{400, 200, 600, 600}));
  EXPECT_FALSE(r.second_pass.has_value());
}

TEST(Pipeline, SmallBoxZoomsAndRemapsSecondPass) {
  auto rig = make_rig(MockScript{}
                          .then(answer({960, 540}, {940, 520, 980, 560}))
                          .then(answer({101, 57}, {81, 37, 121, 77})),
                      no_refine());
  const auto r = rig.pipeline.ground("open the editor", kScreen);
  ASSERT_TRUE(r.zoom_applied);
  EXPECT_EQ(rig.grounder->call_count(), 2u);
  ASSERT_TRUE(r.zoom.has_value());
  EXPECT_EQ(r.zoom->crop_origin, (PixelPoint{480, 270}));

  // Crop origin (480,270), zoomed pixels are half-size originals:
  // 480 + floor(101/2 + 0.5) = 531, 270 + floor(57/2 + 0.5) = 299.
  EXPECT_EQ(r.final_point, (PixelPoint{531, 299}));
  EXPECT_EQ(r.final_point, map_point_to_original({101, 57}, *r.zoom));
  EXPECT_EQ(r.final_box, (PixelBox{480 + 41, 270 + 19, 480 + 61, 270 + 39}));
  EXPECT_EQ(r.second_pass->point, (PixelPoint{101, 57}));

  // The second request carries the zoomed crop, same size as the screen.
  const auto log = rig.grounder->requests();
  ASSERT_EQ(log.size(), 2u);
  EXPECT_EQ(log[1].image_size, kScreen->size());
  EXPECT_EQ(log[1].image_digest, image_digest(crop_and_resize_serial(*kScreen, *r.zoom)));
  EXPECT_EQ(log[0].user_text, log[1].user_text);
}

TEST(Pipeline, NullFirstPassNeverZooms) {
  for (auto mode : {ZoomMode::conditional, ZoomMode::always}) {
    auto rig = make_rig(MockScript{}.then(null_answer()), no_refine(mode));
    const auto r = rig.pipeline.ground("close the dialog", kScreen);
    EXPECT_FALSE(r.zoom_applied);
    EXPECT_TRUE(r.final_is_null());
    EXPECT_FALSE(r.unparseable());
    EXPECT_EQ(rig.grounder->call_count(), 1u);
  }
}

TEST(Pipeline, RefinerCalledExactlyWhenEnabled) {
  PipelineConfig cfg;
  cfg.refinement_enabled = true;
  auto rig = make_rig(MockScript{}.then(answer({500, 400}, {400, 200, 600, 600})), cfg,
                      MockScript{}.then("click the blue folder icon at the top left"));
  const auto r = rig.pipeline.ground("open files", kScreen);
  EXPECT_EQ(rig.refiner->call_count(), 1u);
  EXPECT_EQ(r.refined_instruction, "click the blue folder icon at the top left");
  const auto refine_log = rig.refiner->requests();
  EXPECT_TRUE(refine_log[0].user_text.ends_with("Task: open files"));
  EXPECT_EQ(refine_log[0].image_digest, image_digest(*kScreen));
  EXPECT_TRUE(rig.grounder->requests()[0].user_text.ends_with(
      "Task: click the blue folder icon at the top left"));

  auto off = make_rig(MockScript{}.then(answer({500, 400}, {400, 200, 600, 600})),
                      no_refine());
  const auto r2 = off.pipeline.ground("open files", kScreen);
  EXPECT_EQ(off.refiner->call_count(), 0u);
  EXPECT_FALSE(r2.refined_instruction.has_value());
  EXPECT_TRUE(off.grounder->requests()[0].user_text.ends_with("Task: open files"));
}

TEST(Pipeline, RefinementFailureFallsBackToInstruction) {
  PipelineConfig cfg;
  for (auto reply : {MockReply::fail(BackendErrorKind::timeout), MockReply::ok("   \n")}) {
    auto rig = make_rig(MockScript{}.then(answer({500, 400}, {400, 200, 600, 600})), cfg,
                        MockScript{}.then(reply));
    const auto r = rig.pipeline.ground("open files", kScreen);
    ASSERT_EQ(r.fallbacks, std::vector<Fallback>{Fallback::refine_failed});
    EXPECT_FALSE(r.refined_instruction.has_value());
    EXPECT_TRUE(rig.grounder->requests()[0].user_text.ends_with("Task: open files"));
  }
}

TEST(Pipeline, UnparseableFirstPassIsFlagged) {
  auto rig = make_rig(MockScript{}.then("I would click the settings gear."), no_refine());
  const auto r = rig.pipeline.ground("open settings", kScreen);
  EXPECT_TRUE(r.unparseable());
  EXPECT_EQ(r.first_pass_error->kind, FormatErrorKind::missing_click);
  EXPECT_TRUE(r.final_is_null());
  EXPECT_FALSE(r.zoom_applied);
  EXPECT_EQ(rig.grounder->call_count(), 1u);
}

TEST(Pipeline, SecondPassFailuresFallBackToFirstPass) {
  const auto first = answer({960, 540}, {940, 520, 980, 560});
  for (const auto& [second, fallback] :
       {std::pair{std::string("nothing to see"), Fallback::second_parse_failed},
        std::pair{null_answer(), Fallback::second_null}}) {
    auto rig = make_rig(MockScript{}.then(first).then(second), no_refine());
    const auto r = rig.pipeline.ground("open the editor", kScreen);
    EXPECT_TRUE(r.zoom_applied);
    EXPECT_EQ(r.fallbacks, std::vector<Fallback>{fallback});
    EXPECT_EQ(r.final_point, (PixelPoint{960, 540}));
    EXPECT_EQ(r.final_box, (PixelBox{940, 520, 980, 560}));
  }
}

TEST(Pipeline, GrounderErrorPropagates) {
  auto rig = make_rig(MockScript{}.then(MockReply::fail(BackendErrorKind::protocol)),
                      no_refine());
  EXPECT_THROW((void)rig.pipeline.ground("x", kScreen), BackendError);
}

TEST(Pipeline, ZoomModesNeverAndAlways) {
  const auto small = answer({960, 540}, {940, 520, 980, 560});
  const auto large = answer({500, 400}, {400, 200, 600, 600});

  auto never = make_rig(MockScript{}.then(small), no_refine(ZoomMode::never));
  EXPECT_FALSE(never.pipeline.ground("x", kScreen).zoom_applied);
  EXPECT_EQ(never.grounder->call_count(), 1u);

  auto always = make_rig(MockScript{}.then(large).then(answer({10, 10}, {0, 0, 20, 20})),
                         no_refine(ZoomMode::always));
  const auto r = always.pipeline.ground("x", kScreen);
  EXPECT_TRUE(r.zoom_applied);
  EXPECT_EQ(always.grounder->call_count(), 2u);
}

TEST(Pipeline, NeverModeEqualsFirstPassOnly) {
  const auto text = answer({960, 540}, {940, 520, 980, 560});
  auto rig = make_rig(MockScript{}.then(text), no_refine(ZoomMode::never));
  const auto r = rig.pipeline.ground("open the editor", kScreen);
  const auto direct = std::get<GroundingAction>(parse_grounding_output(text));
  EXPECT_EQ(r.first_pass, direct);
  EXPECT_EQ(r.final_point, direct.point);
  EXPECT_EQ(rig.grounder->requests()[0].user_text,
            build_grounding_prompt("open the editor", kScreen).user_text);
}

TEST(Pipeline, FinalPointStaysInsideImage) {
  auto rig = make_rig(MockScript{}.then(answer({5000, 4000}, {4000, 3000, 6000, 5000})),
                      no_refine(ZoomMode::never));
  const auto r = rig.pipeline.ground("x", kScreen);
  EXPECT_EQ(r.final_point, (PixelPoint{1919, 1079}));
}

TEST(Pipeline, DeterministicAcrossRuns) {
  auto run = [] {
    auto rig = make_rig(MockScript{}
                            .then(answer({960, 540}, {940, 520, 980, 560}))
                            .then(answer({101, 57}, {81, 37, 121, 77})),
                        no_refine());
    auto j = to_json(rig.pipeline.ground("open the editor", kScreen));
    j.erase("timings_ms");
    return j;
  };
  EXPECT_EQ(run(), run());
}

TEST(Pipeline, DumpsZoomCrops) {
  const auto dir = std::filesystem::temp_directory_path() / "zoomground_crops_test";
  std::filesystem::remove_all(dir);
  auto cfg = no_refine();
  cfg.dump_zoom_crops = dir;
  auto rig = make_rig(MockScript{}
                          .then(answer({960, 540}, {940, 520, 980, 560}))
                          .then(answer({101, 57}, {81, 37, 121, 77})),
                      cfg);
  (void)rig.pipeline.ground("x", kScreen, "sample7");
  const auto dumped = load_image(dir / "sample7_zoom.png");
  EXPECT_EQ(dumped.size(), kScreen->size());
  std::filesystem::remove_all(dir);
}

TEST(Pipeline, JsonMirrorsResult) {
  auto rig = make_rig(MockScript{}
                          .then(answer({960, 540}, {940, 520, 980, 560}))
                          .then("garbage"),
                      no_refine());
  const auto j = to_json(rig.pipeline.ground("x", kScreen));
  EXPECT_EQ(j["zoom_applied"], true);
  EXPECT_EQ(j["unparseable"], false);
  EXPECT_EQ(j["fallbacks"], nlohmann::json::array({"second_parse_failed"}));
  EXPECT_TRUE(j.contains("final_point"));
  EXPECT_TRUE(j.contains("timings_ms"));
}

TEST(Pipeline, RejectsBadInput) {
  auto rig = make_rig(MockScript{}, no_refine());
  EXPECT_THROW((void)rig.pipeline.ground("", kScreen), std::invalid_argument);
  EXPECT_THROW((void)rig.pipeline.ground("x", nullptr), std::invalid_argument);
  EXPECT_THROW(Pipeline(PipelineConfig{}, std::make_shared<MockBackend>(MockScript{})),
               std::invalid_argument);
  EXPECT_EQ(parse_zoom_mode("always"), ZoomMode::always);
  EXPECT_THROW((void)parse_zoom_mode("sometimes"), std::invalid_argument);
}

}  // namespace
}  // namespace zoomground
