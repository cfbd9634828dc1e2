// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

// Pixel kernels. Each has an OpenMP row-parallel version used by the library
// and a plain serial reference kept for tests and the benchmark; both produce
// bit-identical output.

#pragma once

#include <cstdint>

#include "zoomground/image.hpp"

namespace zoomground::kernels {

/// Source rectangle in pixels: [x, x + width) x [y, y + height).
struct Region {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

/// Bilinear resample of `region` of `src` into `dst` (pre-sized; its
/// dimensions are the output size, its channel count must match src). Uses
/// pixel-center alignment with edge clamping inside the region.
void resize_bilinear(const Image& src, Region region, Image& dst);
void resize_bilinear_serial(const Image& src, Region region, Image& dst);

/// Places src inside a larger canvas filled with `fill`.
[[nodiscard]] Image pad_constant(const Image& src, int left, int top, int right,
                                 int bottom, std::uint8_t fill = 0);
[[nodiscard]] Image pad_constant_serial(const Image& src, int left, int top,
                                        int right, int bottom,
                                        std::uint8_t fill = 0);

}  // namespace zoomground::kernels
