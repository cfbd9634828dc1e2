// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "zoomground/geometry.hpp"

namespace zoomground {
namespace {

TEST(PointInBox, ClosedIntervalBoundary) {
  EXPECT_TRUE(point_in_box({0, 0}, {0, 0, 0, 0}));
  EXPECT_TRUE(point_in_box({5, 5}, {0, 0, 10, 10}));
  EXPECT_FALSE(point_in_box({11, 5}, {0, 0, 10, 10}));
  EXPECT_TRUE(point_in_box({10, 10}, {0, 0, 10, 10}));
  EXPECT_FALSE(point_in_box({5, 11}, {0, 0, 10, 10}));
}

TEST(Iou, Examples) {
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {0, 0, 10, 10}), 1.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {20, 20, 30, 30}), 0.0);

  // Raster oracle: 50 shared cells out of 150.
  const PixelBox a{0, 0, 10, 10};
  const PixelBox b{5, 0, 15, 10};
  ASSERT_DOUBLE_EQ(oracle::raster_iou(a, b), 50.0 / 150.0);
  EXPECT_DOUBLE_EQ(iou(a, b), 1.0 / 3.0);
}

TEST(Iou, DegenerateBoxesGiveZero) {
  EXPECT_EQ(iou({0, 0, 0, 0}, {0, 0, 0, 0}), 0.0);
  EXPECT_EQ(iou({3, 3, 3, 9}, {3, 3, 3, 9}), 0.0);
  EXPECT_EQ(iou({3, 3, 3, 9}, {0, 0, 10, 10}), 0.0);
}

TEST(BoxDims, Examples) {
  EXPECT_EQ(box_dims({0, 0, 0, 0}), std::make_pair(0, 0));
  EXPECT_EQ(box_dims({10, 20, 110, 70}), std::make_pair(100, 50));
  EXPECT_EQ(box_dims({3, 3, 3, 9}), std::make_pair(0, 6));
}

TEST(ClampBox, Examples) {
  const ImageSize s{100, 100};
  EXPECT_EQ(clamp_box({-5, -5, 10, 10}, s), (PixelBox{0, 0, 10, 10}));
  EXPECT_EQ(clamp_box({90, 90, 200, 200}, s), (PixelBox{90, 90, 100, 100}));
  EXPECT_EQ(clamp_box({0, 0, 50, 50}, s), (PixelBox{0, 0, 50, 50}));
}

TEST(RoundHalfUp, Ties) {
  EXPECT_EQ(round_half_up(2.5), 3);
  EXPECT_EQ(round_half_up(2.4999), 2);
  EXPECT_EQ(round_half_up(-0.5), 0);
  EXPECT_EQ(round_half_up(0.0), 0);
}

PixelBox random_box(std::mt19937& rng, int hi) {
  std::uniform_int_distribution<int> d(0, hi);
  return normalized(PixelBox{d(rng), d(rng), d(rng), d(rng)});
}

TEST(GeometryProperties, IouMatchesRasterOracleOnSmallGrid) {
  std::mt19937 rng(7);
  for (int i = 0; i < 5000; ++i) {
    const auto a = random_box(rng, 16);
    const auto b = random_box(rng, 16);
    ASSERT_DOUBLE_EQ(iou(a, b), oracle::raster_iou(a, b)) << a << " vs " << b;
  }
}

TEST(GeometryProperties, IouSymmetricBoundedAndOneOnlyForEqualBoxes) {
  std::mt19937 rng(11);
  for (int i = 0; i < 5000; ++i) {
    const auto a = random_box(rng, 20);
    const auto b = random_box(rng, 20);
    const double v = iou(a, b);
    ASSERT_EQ(v, iou(b, a));
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
    if (v == 1.0) {
      ASSERT_EQ(a, b);
    }
    if (a == b && a.area() > 0) {
      ASSERT_EQ(v, 1.0);
    }
  }
}

TEST(GeometryProperties, PointInBoxMonotoneUnderGrowth) {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> d(0, 30);
  std::uniform_int_distribution<int> grow(0, 5);
  for (int i = 0; i < 5000; ++i) {
    const auto b = random_box(rng, 30);
    const PixelPoint p{d(rng), d(rng)};
    const PixelBox bigger{b.x1 - grow(rng), b.y1 - grow(rng), b.x2 + grow(rng),
                          b.y2 + grow(rng)};
    if (point_in_box(p, b)) {
      ASSERT_TRUE(point_in_box(p, bigger));
    }
  }
}

TEST(GeometryProperties, ClampBoxIdempotentAndValid) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-50, 250);
  for (int i = 0; i < 2000; ++i) {
    const auto b = normalized(PixelBox{d(rng), d(rng), d(rng), d(rng)});
    const ImageSize s{1 + (i % 200), 1 + (i % 150)};
    const auto once = clamp_box(b, s);
    ASSERT_TRUE(once.valid());
    ASSERT_EQ(clamp_box(once, s), once);
  }
}

}  // namespace
}  // namespace zoomground
