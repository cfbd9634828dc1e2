// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "test_support.hpp"
#include "zoomground/zoom.hpp"

namespace zoomground {
namespace {

const ZoomConfig kDefaults{};

ZoomTransform transform_at(PixelPoint origin, double scale, ImageSize source) {
  ZoomTransform t;
  t.crop_origin = origin;
  t.source_size = source;
  t.output_size = source;
  t.crop_size = {static_cast<int>(source.width / scale),
                 static_cast<int>(source.height / scale)};
  t.scale_x = scale;
  t.scale_y = scale;
  return t;
}

TEST(ZoomConfig, Validation) {
  EXPECT_NO_THROW(kDefaults.validate());
  EXPECT_THROW((ZoomConfig{300, 100, 2}.validate()), std::invalid_argument);
  EXPECT_THROW((ZoomConfig{0, 100, 2}.validate()), std::invalid_argument);
  EXPECT_THROW((ZoomConfig{100, 300, 1.0}.validate()), std::invalid_argument);
}

TEST(ShouldZoom, Examples) {
  EXPECT_TRUE(should_zoom({0, 0, 80, 200}, kDefaults));
  EXPECT_TRUE(should_zoom({0, 0, 250, 80}, kDefaults));
  EXPECT_FALSE(should_zoom({0, 0, 150, 150}, kDefaults));
  EXPECT_FALSE(should_zoom({0, 0, 200, 400}, kDefaults));
}

TEST(ShouldZoom, NullBoxExemptAlthoughFormulaHolds) {
  EXPECT_TRUE(zoom_condition(0, 0, kDefaults));
  EXPECT_FALSE(should_zoom({0, 0, 0, 0}, kDefaults));
  // A degenerate box away from the origin is not the null action.
  EXPECT_TRUE(should_zoom({5, 5, 5, 5}, kDefaults));
}

TEST(ShouldZoom, SymmetricAndMatchesTruthTable) {
  for (const ZoomConfig cfg : {kDefaults, ZoomConfig{50, 120, 2}, ZoomConfig{10, 11, 3}}) {
    for (int w = 0; w <= 2 * static_cast<int>(cfg.beta); ++w) {
      for (int h = 0; h <= 2 * static_cast<int>(cfg.beta); h += 3) {
        ASSERT_EQ(zoom_condition(w, h, cfg), zoom_condition(h, w, cfg));
        ASSERT_EQ(zoom_condition(w, h, cfg),
                  oracle::zoom_truth_table(w, h, cfg.alpha, cfg.beta))
            << w << "x" << h;
      }
    }
  }
}

TEST(ComputeZoomWindow, Examples) {
  const ImageSize hd{1920, 1080};
  auto t = compute_zoom_window({960, 540}, hd, kDefaults);
  EXPECT_EQ(t.crop_origin, (PixelPoint{480, 270}));
  EXPECT_EQ(t.crop_size, (ImageSize{960, 540}));
  EXPECT_EQ(t.output_size, hd);
  EXPECT_EQ(t.scale_x, 2.0);
  EXPECT_EQ(t.scale_y, 2.0);

  t = compute_zoom_window({10, 10}, hd, kDefaults);
  EXPECT_EQ(t.crop_origin, (PixelPoint{0, 0}));
  EXPECT_EQ(t.crop_size, (ImageSize{960, 540}));

  t = compute_zoom_window({1919, 540}, hd, kDefaults);
  const int expected_x = std::clamp(1919 - 480, 0, 1920 - 960);
  ASSERT_EQ(expected_x, 960);
  EXPECT_EQ(t.crop_origin, (PixelPoint{expected_x, 270}));
}

TEST(ComputeZoomWindow, OutOfBoundsClickIsClamped) {
  const auto t = compute_zoom_window({5000, -20}, {1920, 1080}, kDefaults);
  EXPECT_EQ(t.crop_origin, (PixelPoint{960, 0}));
}

TEST(ComputeZoomWindow, AlwaysInsideWithExactSize) {
  std::mt19937 rng(3);
  for (int i = 0; i < 3000; ++i) {
    const ImageSize img{16 + static_cast<int>(rng() % 3000), 16 + static_cast<int>(rng() % 2000)};
    const double r = std::array{1.5, 2.0, 3.0}[rng() % 3];
    const PixelPoint click{static_cast<int>(rng() % img.width),
                           static_cast<int>(rng() % img.height)};
    const auto t = compute_zoom_window(click, img, ZoomConfig{100, 300, r});
    ASSERT_EQ(t.crop_size.width, static_cast<int>(std::floor(img.width / r)));
    ASSERT_EQ(t.crop_size.height, static_cast<int>(std::floor(img.height / r)));
    ASSERT_GE(t.crop_origin.x, 0);
    ASSERT_GE(t.crop_origin.y, 0);
    ASSERT_LE(t.crop_origin.x + t.crop_size.width, img.width);
    ASSERT_LE(t.crop_origin.y + t.crop_size.height, img.height);
    ASSERT_EQ(t.output_size, img);
  }
}

TEST(MapPointToOriginal, Examples) {
  const ImageSize hd{1920, 1080};
  EXPECT_EQ(map_point_to_original({0, 0}, transform_at({100, 200}, 2.0, hd)),
            (PixelPoint{100, 200}));

  const auto t = transform_at({100, 200}, 2.0, hd);
  const PixelPoint expected{125, 230};
  // Forward check: the expected answer lands on the queried zoomed pixel.
  ASSERT_EQ(oracle::forward_coordinate(expected.x, 100, t.crop_size.width, hd.width), 50.0);
  ASSERT_EQ(oracle::forward_coordinate(expected.y, 200, t.crop_size.height, hd.height), 60.0);
  EXPECT_EQ(map_point_to_original({50, 60}, t), expected);

  const auto id = ZoomTransform::identity(hd);
  EXPECT_EQ(map_point_to_original({321, 77}, id), (PixelPoint{321, 77}));
}

TEST(MapPointToOriginal, ClampsIntoImage) {
  const auto t = transform_at({960, 540}, 2.0, {1920, 1080});
  EXPECT_EQ(map_point_to_original({1919, 1079}, t), (PixelPoint{1919, 1079}));
  EXPECT_EQ(map_point_to_original({5000, 5000}, t), (PixelPoint{1919, 1079}));
}

TEST(MapBoxToOriginal, Examples) {
  const ImageSize hd{1920, 1080};
  EXPECT_EQ(map_box_to_original({0, 0, 0, 0}, ZoomTransform::identity(hd)),
            (PixelBox{0, 0, 0, 0}));

  const auto t = transform_at({100, 100}, 2.0, hd);
  const PixelBox expected{105, 105, 110, 110};
  for (auto [orig, zoomed] : {std::pair{expected.x1, 10}, std::pair{expected.x2, 20}}) {
    ASSERT_EQ(oracle::forward_coordinate(orig, 100, t.crop_size.width, hd.width), zoomed);
  }
  EXPECT_EQ(map_box_to_original({10, 10, 20, 20}, t), expected);

  const auto w = compute_zoom_window({700, 300}, hd, kDefaults);
  EXPECT_EQ(map_box_to_original({0, 0, hd.width, hd.height}, w),
            (PixelBox{w.crop_origin.x, w.crop_origin.y, w.crop_origin.x + w.crop_size.width,
                      w.crop_origin.y + w.crop_size.height}));
}

TEST(ZoomProperties, RoundTripWithinOnePixel) {
  std::mt19937 rng(8);
  for (int i = 0; i < 2000; ++i) {
    const ImageSize img{64 + static_cast<int>(rng() % 2500), 64 + static_cast<int>(rng() % 1500)};
    const double r = std::array{1.5, 2.0, 3.0}[rng() % 3];
    const auto t = compute_zoom_window({static_cast<int>(rng() % img.width),
                                        static_cast<int>(rng() % img.height)},
                                       img, ZoomConfig{100, 300, r});
    const PixelPoint p{t.crop_origin.x + static_cast<int>(rng() % t.crop_size.width),
                       t.crop_origin.y + static_cast<int>(rng() % t.crop_size.height)};
    const PixelPoint fwd{
        round_half_up(oracle::forward_coordinate(p.x, t.crop_origin.x, t.crop_size.width,
                                                 t.output_size.width)),
        round_half_up(oracle::forward_coordinate(p.y, t.crop_origin.y, t.crop_size.height,
                                                 t.output_size.height))};
    ASSERT_EQ(map_point_to_zoomed(p, t), fwd);
    const auto back = map_point_to_original(fwd, t);
    ASSERT_LE(std::abs(back.x - p.x), 1);
    ASSERT_LE(std::abs(back.y - p.y), 1);
  }
}

TEST(CropAndResize, MatchesSerialAndKeepsOutputSize) {
  const auto img = testing::pattern_image(331, 197);
  const auto t = compute_zoom_window({300, 20}, img->size(), ZoomConfig{100, 300, 3.0});
  const auto par = crop_and_resize(*img, t);
  EXPECT_EQ(par.size(), img->size());
  EXPECT_EQ(par.channels, 3);
  EXPECT_EQ(par, crop_and_resize_serial(*img, t));
  // The crop's top-left pixel sits at the output's top-left corner.
  EXPECT_EQ(par.at(0, 0, 0), img->at(t.crop_origin.x, t.crop_origin.y, 0));
}

TEST(CropAndResize, SizeMismatchIsAnError) {
  const auto img = testing::pattern_image(100, 100);
  const auto t = compute_zoom_window({50, 50}, {200, 100}, kDefaults);
  EXPECT_THROW((void)crop_and_resize(*img, t), ImageError);
  EXPECT_THROW((void)crop_and_resize_serial(*img, t), ImageError);
}

}  // namespace
}  // namespace zoomground
