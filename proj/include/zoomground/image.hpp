// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "zoomground/geometry.hpp"

namespace zoomground {

class ImageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 8-bit interleaved raster, RGB or RGBA or grayscale, rows top to bottom.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, int c, std::uint8_t fill = 0);

  [[nodiscard]] ImageSize size() const noexcept { return {width, height}; }
  [[nodiscard]] bool empty() const noexcept { return pixels.empty(); }
  [[nodiscard]] std::size_t stride() const noexcept {
    return static_cast<std::size_t>(width) * channels;
  }
  [[nodiscard]] std::uint8_t* row(int y) noexcept {
    return pixels.data() + static_cast<std::size_t>(y) * stride();
  }
  [[nodiscard]] const std::uint8_t* row(int y) const noexcept {
    return pixels.data() + static_cast<std::size_t>(y) * stride();
  }
  [[nodiscard]] std::uint8_t at(int x, int y, int c) const noexcept {
    return row(y)[static_cast<std::size_t>(x) * channels + c];
  }

  friend bool operator==(const Image&, const Image&) = default;
};

/// Decodes PNG or JPEG. Color images come back as RGB (or RGBA).
[[nodiscard]] Image load_image(const std::filesystem::path& path);

void save_png(const Image& image, const std::filesystem::path& path);

[[nodiscard]] std::vector<std::uint8_t> encode_png(const Image& image);

/// "data:image/png;base64,..." for inline transmission in chat payloads.
[[nodiscard]] std::string to_png_data_uri(const Image& image);

[[nodiscard]] std::string base64_encode(const std::vector<std::uint8_t>& bytes);

/// FNV-1a over dimensions and pixel bytes.
[[nodiscard]] std::uint64_t image_digest(const Image& image) noexcept;

}  // namespace zoomground
