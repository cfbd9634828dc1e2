// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <utility>

namespace zoomground {

/// A pixel coordinate. Non-negative in every valid model answer; no image
/// bound is implied, see clamp_point / clamp_box for explicit bound checks.
struct PixelPoint {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

/// Axis-aligned box given by two corners. x1 <= x2 and y1 <= y2 for a valid
/// box; the all-zero box is the distinguished null box.
struct PixelBox {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  [[nodiscard]] bool valid() const noexcept { return x1 <= x2 && y1 <= y2; }
  [[nodiscard]] bool is_zero() const noexcept {
    return x1 == 0 && y1 == 0 && x2 == 0 && y2 == 0;
  }
  [[nodiscard]] int width() const noexcept { return x2 - x1; }
  [[nodiscard]] int height() const noexcept { return y2 - y1; }
  [[nodiscard]] double area() const noexcept {
    return static_cast<double>(width()) * static_cast<double>(height());
  }

  friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

struct ImageSize {
  int width = 0;
  int height = 0;

  [[nodiscard]] bool valid() const noexcept { return width > 0 && height > 0; }

  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

/// Closed-interval membership: x1 <= p.x <= x2 and y1 <= p.y <= y2.
[[nodiscard]] bool point_in_box(PixelPoint p, const PixelBox& b) noexcept;

/// Intersection over union using continuous box area. Zero union area gives 0.
[[nodiscard]] double iou(const PixelBox& a, const PixelBox& b) noexcept;

/// (width, height) of the box.
[[nodiscard]] std::pair<int, int> box_dims(const PixelBox& b) noexcept;

/// Clips every coordinate into [0, width] x [0, height].
[[nodiscard]] PixelBox clamp_box(const PixelBox& b, ImageSize s) noexcept;

/// Clips a point onto the pixel grid [0, width-1] x [0, height-1].
[[nodiscard]] PixelPoint clamp_point(PixelPoint p, ImageSize s) noexcept;

/// Swaps corners so the box satisfies x1 <= x2, y1 <= y2.
[[nodiscard]] PixelBox normalized(const PixelBox& b) noexcept;

/// Integer center, rounding toward the top-left.
[[nodiscard]] PixelPoint box_center(const PixelBox& b) noexcept;

/// Rounds half up (toward +infinity on ties), the convention used for every
/// real-to-pixel conversion in this library.
[[nodiscard]] int round_half_up(double v) noexcept;

std::ostream& operator<<(std::ostream& os, const PixelPoint& p);
std::ostream& operator<<(std::ostream& os, const PixelBox& b);
std::ostream& operator<<(std::ostream& os, const ImageSize& s);

}  // namespace zoomground
