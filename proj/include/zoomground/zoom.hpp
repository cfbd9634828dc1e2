// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

// Conditional zoom-in: the small-element test on a predicted box, the crop
// window around a click-point, and the mapping between zoomed and original
// pixel spaces.

#pragma once

#include "zoomground/geometry.hpp"
#include "zoomground/image.hpp"

namespace zoomground {

/// Thresholds are in original-image pixels. ratio is the linear zoom factor:
/// the crop is 1/ratio of the image per axis and is resized back up.
struct ZoomConfig {
  double alpha = 100.0;
  double beta = 300.0;
  double ratio = 2.0;

  /// Throws std::invalid_argument unless 0 < alpha < beta and ratio > 1.
  void validate() const;

  friend bool operator==(const ZoomConfig&, const ZoomConfig&) = default;
};

struct ZoomTransform {
  PixelPoint crop_origin;  // top-left of the crop in original space
  ImageSize crop_size;
  ImageSize source_size;  // original image the crop was taken from
  ImageSize output_size;  // zoomed image size
  double scale_x = 1.0;   // output.width / crop.width
  double scale_y = 1.0;

  /// Origin (0,0), unit scale, crop covering the whole image.
  static ZoomTransform identity(ImageSize size);
};

/// (w <= alpha && h <= beta) || (h <= alpha && w <= beta).
[[nodiscard]] bool zoom_condition(double w, double h,
                                  const ZoomConfig& cfg) noexcept;

/// zoom_condition on the box dimensions; the null box never zooms.
[[nodiscard]] bool should_zoom(const PixelBox& box,
                               const ZoomConfig& cfg) noexcept;

/// Crop of floor(W/r) x floor(H/r) centered on the click (clamped into the
/// image first) and translated, never shrunk, to fit inside the image. The
/// crop is resized back to the full image size.
[[nodiscard]] ZoomTransform compute_zoom_window(PixelPoint click, ImageSize img,
                                                const ZoomConfig& cfg);

/// origin + round(p / scale), clamped onto the original pixel grid.
[[nodiscard]] PixelPoint map_point_to_original(PixelPoint p,
                                               const ZoomTransform& t) noexcept;

/// Corner-wise mapping; corners are box edges so they clamp to [0, W] x [0, H].
[[nodiscard]] PixelBox map_box_to_original(const PixelBox& b,
                                           const ZoomTransform& t) noexcept;

/// round((p - origin) * scale), the forward direction of the mapping above.
[[nodiscard]] PixelPoint map_point_to_zoomed(PixelPoint p,
                                             const ZoomTransform& t) noexcept;

/// Bilinear crop-and-resize. Throws ImageError when the image size differs
/// from t.source_size.
[[nodiscard]] Image crop_and_resize(const Image& image, const ZoomTransform& t);
[[nodiscard]] Image crop_and_resize_serial(const Image& image,
                                           const ZoomTransform& t);

}  // namespace zoomground
