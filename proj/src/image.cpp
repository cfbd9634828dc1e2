// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include "zoomground/image.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstring>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace zoomground {
namespace {

// OpenCV stores color as BGR(A); this library uses RGB(A).
void swap_red_blue(std::uint8_t* data, std::size_t pixel_count, int channels) {
  if (channels < 3) return;
  for (std::size_t i = 0; i < pixel_count; ++i) {
    std::swap(data[i * channels], data[i * channels + 2]);
  }
}

cv::Mat to_bgr_mat(const Image& image) {
  if (image.channels != 1 && image.channels != 3 && image.channels != 4) {
    throw ImageError("unsupported channel count " +
                     std::to_string(image.channels));
  }
  cv::Mat mat(image.height, image.width, CV_8UC(image.channels));
  for (int y = 0; y < image.height; ++y) {
    std::memcpy(mat.ptr(y), image.row(y), image.stride());
  }
  swap_red_blue(mat.data, mat.total(), image.channels);
  return mat;
}

}  // namespace

Image::Image(int w, int h, int c, std::uint8_t fill)
    : width(w),
      height(h),
      channels(c),
      pixels(static_cast<std::size_t>(w) * h * c, fill) {
  if (w <= 0 || h <= 0 || c <= 0) throw ImageError("image dimensions must be positive");
}

Image load_image(const std::filesystem::path& path) {
  cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (mat.empty()) throw ImageError("cannot decode image: " + path.string());
  if (mat.depth() != CV_8U) {
    mat.convertTo(mat, CV_8U, 1.0 / 256.0);
  }
  Image image(mat.cols, mat.rows, mat.channels());
  for (int y = 0; y < image.height; ++y) {
    std::memcpy(image.row(y), mat.ptr(y), image.stride());
  }
  swap_red_blue(image.pixels.data(),
                static_cast<std::size_t>(image.width) * image.height,
                image.channels);
  return image;
}

std::vector<std::uint8_t> encode_png(const Image& image) {
  std::vector<std::uint8_t> buf;
  if (!cv::imencode(".png", to_bgr_mat(image), buf)) {
    throw ImageError("PNG encoding failed");
  }
  return buf;
}

void save_png(const Image& image, const std::filesystem::path& path) {
  if (!cv::imwrite(path.string(), to_bgr_mat(image))) {
    throw ImageError("cannot write image: " + path.string());
  }
}

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                bytes.data(), static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string to_png_data_uri(const Image& image) {
  return "data:image/png;base64," + base64_encode(encode_png(image));
}

std::uint64_t image_digest(const Image& image) noexcept {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  for (int v : {image.width, image.height, image.channels}) {
    for (int i = 0; i < 4; ++i) mix(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  for (auto byte : image.pixels) mix(byte);
  return h;
}

}  // namespace zoomground
