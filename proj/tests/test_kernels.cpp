// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "test_support.hpp"
#include "zoomground/image.hpp"
#include "zoomground/kernels.hpp"

namespace zoomground {
namespace {

Image noise_image(int w, int h, int ch, unsigned seed) {
  Image img(w, h, ch);
  std::mt19937 rng(seed);
  for (auto& v : img.pixels) v = static_cast<std::uint8_t>(rng() & 0xff);
  return img;
}

TEST(ResizeBilinear, HandComputedRamp) {
  Image src(2, 1, 1);
  src.pixels = {0, 100};
  Image dst(4, 1, 1);
  kernels::resize_bilinear(src, {0, 0, 2, 1}, dst);
  // Source positions -0.25 (clamped), 0.25, 0.75, 1.25 (clamped).
  EXPECT_EQ(dst.pixels, (std::vector<std::uint8_t>{0, 25, 75, 100}));
}

TEST(ResizeBilinear, SameSizeIsCopy) {
  const auto src = noise_image(37, 23, 3, 1);
  Image dst(37, 23, 3);
  kernels::resize_bilinear(src, {0, 0, 37, 23}, dst);
  EXPECT_EQ(dst, src);
}

TEST(ResizeBilinear, ConstantStaysConstant) {
  const Image src(40, 30, 4, 77);
  Image dst(113, 61, 4);
  kernels::resize_bilinear(src, {5, 3, 20, 17}, dst);
  EXPECT_EQ(dst, Image(113, 61, 4, 77));
}

TEST(ResizeBilinear, ParallelMatchesSerial) {
  std::mt19937 rng(4);
  for (int i = 0; i < 40; ++i) {
    const int ch = 1 + static_cast<int>(rng() % 4);
    const auto src = noise_image(20 + rng() % 200, 20 + rng() % 150, ch, rng());
    const kernels::Region r{static_cast<int>(rng() % 10), static_cast<int>(rng() % 10),
                            5 + static_cast<int>(rng() % (src.width - 15)),
                            5 + static_cast<int>(rng() % (src.height - 15))};
    Image a(1 + rng() % 300, 1 + rng() % 300, ch);
    Image b = a;
    kernels::resize_bilinear(src, r, a);
    kernels::resize_bilinear_serial(src, r, b);
    ASSERT_EQ(a, b);
  }
}

TEST(ResizeBilinear, RejectsBadArguments) {
  const auto src = noise_image(10, 10, 3, 2);
  Image dst(5, 5, 3);
  EXPECT_THROW(kernels::resize_bilinear(src, {5, 5, 10, 10}, dst), ImageError);
  Image wrong_channels(5, 5, 1);
  EXPECT_THROW(kernels::resize_bilinear(src, {0, 0, 10, 10}, wrong_channels), ImageError);
}

TEST(PadConstant, PlacesSourceInsideFill) {
  const auto src = noise_image(7, 5, 3, 9);
  const auto out = kernels::pad_constant(src, 3, 2, 1, 4);
  ASSERT_EQ(out.size(), (ImageSize{11, 11}));
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      const bool inside = x >= 3 && x < 10 && y >= 2 && y < 7;
      for (int c = 0; c < 3; ++c) {
        ASSERT_EQ(out.at(x, y, c), inside ? src.at(x - 3, y - 2, c) : 0);
      }
    }
  }
  EXPECT_EQ(out, kernels::pad_constant_serial(src, 3, 2, 1, 4));
  EXPECT_EQ(kernels::pad_constant(src, 0, 0, 0, 0), src);
  EXPECT_THROW((void)kernels::pad_constant(src, -1, 0, 0, 0), ImageError);
}

TEST(Base64, KnownVectors) {
  EXPECT_EQ(base64_encode({}), "");
  EXPECT_EQ(base64_encode({'M'}), "TQ==");
  EXPECT_EQ(base64_encode({'M', 'a'}), "TWE=");
  EXPECT_EQ(base64_encode({'M', 'a', 'n'}), "TWFu");
}

TEST(ImageIo, PngRoundTripAndDataUri) {
  const auto img = testing::pattern_image(33, 21);
  const auto path = std::filesystem::temp_directory_path() / "zoomground_io_test.png";
  save_png(*img, path);
  const auto back = load_image(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back, *img);
  EXPECT_EQ(image_digest(back), image_digest(*img));
  EXPECT_EQ(to_png_data_uri(*img).rfind("data:image/png;base64,", 0), 0u);
  EXPECT_THROW((void)load_image("/nonexistent/none.png"), ImageError);
}

}  // namespace
}  // namespace zoomground
