// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include "zoomground/reward.hpp"

#include <stdexcept>

#include "zoomground/action_grammar.hpp"

namespace zoomground {
namespace {

double combine(int format, double content, RewardCombination mode) {
  if (mode == RewardCombination::additive) return 0.5 * (format + content);
  return format * content;
}

}  // namespace

RewardWeights::RewardWeights(double lambda, RewardCombination combination)
    : lambda_(lambda), combination_(combination) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("reward lambda must lie in [0, 1]");
  }
}

int format_reward_point(std::string_view text) {
  return scan_strict_segments(text).point.has_value() ? 1 : 0;
}

int format_reward_bbox(std::string_view text) {
  return scan_strict_segments(text).box.has_value() ? 1 : 0;
}

RewardBreakdown compute_reward(std::string_view text, const PixelBox& gt_box,
                               const RewardWeights& w) {
  const auto seg = scan_strict_segments(text);
  RewardBreakdown r;
  if (seg.point) {
    r.format_point = 1;
    r.point_in_box = point_in_box(*seg.point, gt_box) ? 1 : 0;
    r.r_point = combine(r.format_point, r.point_in_box, w.combination());
  }
  if (seg.box) {
    r.format_bbox = 1;
    r.iou = iou(*seg.box, gt_box);
    r.r_bbox = combine(r.format_bbox, r.iou, w.combination());
  }
  r.total = w.lambda() * r.r_point + (1.0 - w.lambda()) * r.r_bbox;
  return r;
}

std::vector<RewardBreakdown> compute_rewards(
    std::span<const RewardRecord> records, const RewardWeights& w) {
  std::vector<RewardBreakdown> out(records.size());
  const auto n = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = compute_reward(records[i].response_text, records[i].gt_box, w);
  }
  return out;
}

std::vector<RewardBreakdown> compute_rewards_serial(
    std::span<const RewardRecord> records, const RewardWeights& w) {
  std::vector<RewardBreakdown> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    out.push_back(compute_reward(rec.response_text, rec.gt_box, w));
  }
  return out;
}

}  // namespace zoomground
