// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include "zoomground/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

namespace zoomground::kernels {
namespace {

struct Tap {
  int i0;
  int i1;
  double frac;
};

// Source coordinate for destination index d, pixel-center aligned, clamped to
// [0, src_len - 1] relative to the region origin.
Tap make_tap(int d, int src_len, int dst_len) {
  const double scale = static_cast<double>(src_len) / dst_len;
  double s = (d + 0.5) * scale - 0.5;
  s = std::clamp(s, 0.0, static_cast<double>(src_len - 1));
  const int i0 = static_cast<int>(std::floor(s));
  const int i1 = std::min(i0 + 1, src_len - 1);
  return {i0, i1, s - i0};
}

std::uint8_t blend(double p00, double p01, double p10, double p11, double fx,
                   double fy) {
  const double top = p00 + (p01 - p00) * fx;
  const double bottom = p10 + (p11 - p10) * fx;
  const double v = top + (bottom - top) * fy;
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

void check_resize_args(const Image& src, Region region, const Image& dst) {
  if (region.width <= 0 || region.height <= 0 || region.x < 0 || region.y < 0 ||
      region.x + region.width > src.width ||
      region.y + region.height > src.height) {
    throw ImageError("resize region outside source image");
  }
  if (dst.channels != src.channels || dst.width <= 0 || dst.height <= 0 ||
      dst.pixels.size() != static_cast<std::size_t>(dst.width) * dst.height *
                               dst.channels) {
    throw ImageError("resize destination not allocated to match source");
  }
}

void check_pads(int left, int top, int right, int bottom) {
  if (left < 0 || top < 0 || right < 0 || bottom < 0) {
    throw ImageError("padding must be non-negative");
  }
}

}  // namespace

void resize_bilinear(const Image& src, Region region, Image& dst) {
  check_resize_args(src, region, dst);
  const int ch = src.channels;

  std::vector<Tap> xs(dst.width);
  for (int dx = 0; dx < dst.width; ++dx) {
    xs[dx] = make_tap(dx, region.width, dst.width);
  }

#pragma omp parallel for schedule(static)
  for (int dy = 0; dy < dst.height; ++dy) {
    const Tap ty = make_tap(dy, region.height, dst.height);
    const std::uint8_t* r0 = src.row(region.y + ty.i0);
    const std::uint8_t* r1 = src.row(region.y + ty.i1);
    std::uint8_t* out = dst.row(dy);
    for (int dx = 0; dx < dst.width; ++dx) {
      const Tap& tx = xs[dx];
      const std::size_t c0 = static_cast<std::size_t>(region.x + tx.i0) * ch;
      const std::size_t c1 = static_cast<std::size_t>(region.x + tx.i1) * ch;
      for (int c = 0; c < ch; ++c) {
        out[static_cast<std::size_t>(dx) * ch + c] =
            blend(r0[c0 + c], r0[c1 + c], r1[c0 + c], r1[c1 + c], tx.frac,
                  ty.frac);
      }
    }
  }
}

void resize_bilinear_serial(const Image& src, Region region, Image& dst) {
  check_resize_args(src, region, dst);
  for (int dy = 0; dy < dst.height; ++dy) {
    const Tap ty = make_tap(dy, region.height, dst.height);
    for (int dx = 0; dx < dst.width; ++dx) {
      const Tap tx = make_tap(dx, region.width, dst.width);
      for (int c = 0; c < src.channels; ++c) {
        const int x0 = region.x + tx.i0;
        const int x1 = region.x + tx.i1;
        const int y0 = region.y + ty.i0;
        const int y1 = region.y + ty.i1;
        dst.row(dy)[static_cast<std::size_t>(dx) * dst.channels + c] =
            blend(src.at(x0, y0, c), src.at(x1, y0, c), src.at(x0, y1, c),
                  src.at(x1, y1, c), tx.frac, ty.frac);
      }
    }
  }
}

Image pad_constant(const Image& src, int left, int top, int right, int bottom,
                   std::uint8_t fill) {
  check_pads(left, top, right, bottom);
  Image out(src.width + left + right, src.height + top + bottom, src.channels,
            fill);
  const std::size_t offset = static_cast<std::size_t>(left) * src.channels;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < src.height; ++y) {
    std::memcpy(out.row(y + top) + offset, src.row(y), src.stride());
  }
  return out;
}

Image pad_constant_serial(const Image& src, int left, int top, int right,
                          int bottom, std::uint8_t fill) {
  check_pads(left, top, right, bottom);
  Image out(src.width + left + right, src.height + top + bottom, src.channels,
            fill);
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      for (int c = 0; c < src.channels; ++c) {
        out.row(y + top)[static_cast<std::size_t>(x + left) * src.channels + c] =
            src.at(x, y, c);
      }
    }
  }
  return out;
}

}  // namespace zoomground::kernels
