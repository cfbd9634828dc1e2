// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include "zoomground/zoom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zoomground/kernels.hpp"

namespace zoomground {
namespace {

kernels::Region crop_region(const ZoomTransform& t) {
  return {t.crop_origin.x, t.crop_origin.y, t.crop_size.width,
          t.crop_size.height};
}

void check_source(const Image& image, const ZoomTransform& t) {
  if (image.size() != t.source_size) {
    throw ImageError("image is not the size the zoom transform was built for");
  }
}

}  // namespace

void ZoomConfig::validate() const {
  if (!(alpha > 0.0 && alpha < beta)) {
    throw std::invalid_argument("zoom thresholds need 0 < alpha < beta");
  }
  if (!(ratio > 1.0) || !std::isfinite(ratio)) {
    throw std::invalid_argument("zoom ratio must be > 1");
  }
}

ZoomTransform ZoomTransform::identity(ImageSize size) {
  return {{0, 0}, size, size, size, 1.0, 1.0};
}

bool zoom_condition(double w, double h, const ZoomConfig& cfg) noexcept {
  return (w <= cfg.alpha && h <= cfg.beta) || (h <= cfg.alpha && w <= cfg.beta);
}

bool should_zoom(const PixelBox& box, const ZoomConfig& cfg) noexcept {
  if (box.is_zero()) return false;
  const auto [w, h] = box_dims(box);
  return zoom_condition(w, h, cfg);
}

ZoomTransform compute_zoom_window(PixelPoint click, ImageSize img,
                                  const ZoomConfig& cfg) {
  cfg.validate();
  if (!img.valid()) throw std::invalid_argument("image size must be positive");

  const int crop_w = std::max(1, static_cast<int>(std::floor(img.width / cfg.ratio)));
  const int crop_h = std::max(1, static_cast<int>(std::floor(img.height / cfg.ratio)));
  const PixelPoint c = clamp_point(click, img);

  ZoomTransform t;
  t.crop_origin = {std::clamp(c.x - crop_w / 2, 0, img.width - crop_w),
                   std::clamp(c.y - crop_h / 2, 0, img.height - crop_h)};
  t.crop_size = {crop_w, crop_h};
  t.source_size = img;
  t.output_size = img;
  t.scale_x = static_cast<double>(img.width) / crop_w;
  t.scale_y = static_cast<double>(img.height) / crop_h;
  return t;
}

PixelPoint map_point_to_original(PixelPoint p, const ZoomTransform& t) noexcept {
  const PixelPoint raw{t.crop_origin.x + round_half_up(p.x / t.scale_x),
                       t.crop_origin.y + round_half_up(p.y / t.scale_y)};
  return clamp_point(raw, t.source_size);
}

PixelBox map_box_to_original(const PixelBox& b, const ZoomTransform& t) noexcept {
  auto map_x = [&](int v) { return t.crop_origin.x + round_half_up(v / t.scale_x); };
  auto map_y = [&](int v) { return t.crop_origin.y + round_half_up(v / t.scale_y); };
  const PixelBox raw{map_x(b.x1), map_y(b.y1), map_x(b.x2), map_y(b.y2)};
  return normalized(clamp_box(raw, t.source_size));
}

PixelPoint map_point_to_zoomed(PixelPoint p, const ZoomTransform& t) noexcept {
  const PixelPoint raw{round_half_up((p.x - t.crop_origin.x) * t.scale_x),
                       round_half_up((p.y - t.crop_origin.y) * t.scale_y)};
  return clamp_point(raw, t.output_size);
}

Image crop_and_resize(const Image& image, const ZoomTransform& t) {
  check_source(image, t);
  Image out(t.output_size.width, t.output_size.height, image.channels);
  kernels::resize_bilinear(image, crop_region(t), out);
  return out;
}

Image crop_and_resize_serial(const Image& image, const ZoomTransform& t) {
  check_source(image, t);
  Image out(t.output_size.width, t.output_size.height, image.channels);
  kernels::resize_bilinear_serial(image, crop_region(t), out);
  return out;
}

}  // namespace zoomground
