// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include "zoomground/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace zoomground {

bool point_in_box(PixelPoint p, const PixelBox& b) noexcept {
  return b.x1 <= p.x && p.x <= b.x2 && b.y1 <= p.y && p.y <= b.y2;
}

double iou(const PixelBox& a, const PixelBox& b) noexcept {
  const double iw = std::max(0, std::min(a.x2, b.x2) - std::max(a.x1, b.x1));
  const double ih = std::max(0, std::min(a.y2, b.y2) - std::max(a.y1, b.y1));
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

std::pair<int, int> box_dims(const PixelBox& b) noexcept {
  return {b.width(), b.height()};
}

PixelBox clamp_box(const PixelBox& b, ImageSize s) noexcept {
  return {std::clamp(b.x1, 0, s.width), std::clamp(b.y1, 0, s.height),
          std::clamp(b.x2, 0, s.width), std::clamp(b.y2, 0, s.height)};
}

PixelPoint clamp_point(PixelPoint p, ImageSize s) noexcept {
  return {std::clamp(p.x, 0, std::max(0, s.width - 1)),
          std::clamp(p.y, 0, std::max(0, s.height - 1))};
}

PixelBox normalized(const PixelBox& b) noexcept {
  return {std::min(b.x1, b.x2), std::min(b.y1, b.y2), std::max(b.x1, b.x2),
          std::max(b.y1, b.y2)};
}

PixelPoint box_center(const PixelBox& b) noexcept {
  return {b.x1 + b.width() / 2, b.y1 + b.height() / 2};
}

int round_half_up(double v) noexcept {
  return static_cast<int>(std::floor(v + 0.5));
}

std::ostream& operator<<(std::ostream& os, const PixelPoint& p) {
  return os << '(' << p.x << ',' << p.y << ')';
}

std::ostream& operator<<(std::ostream& os, const PixelBox& b) {
  return os << "((" << b.x1 << ',' << b.y1 << "),(" << b.x2 << ',' << b.y2
            << "))";
}

std::ostream& operator<<(std::ostream& os, const ImageSize& s) {
  return os << s.width << 'x' << s.height;
}

}  // namespace zoomground
