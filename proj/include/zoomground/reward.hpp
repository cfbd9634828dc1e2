// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zoomground/geometry.hpp"

namespace zoomground {

/// How the format reward and the content reward combine inside each of the
/// point and box rewards.
enum class RewardCombination {
  /// r = format * content. An ill-formatted answer earns nothing.
  multiplicative,
  /// r = (format + content) / 2. Content still needs a canonical parse.
  additive,
};

class RewardWeights {
 public:
  /// lambda = 0.5, multiplicative.
  RewardWeights() : RewardWeights(0.5) {}
  /// Throws std::invalid_argument unless 0 <= lambda <= 1.
  explicit RewardWeights(double lambda, RewardCombination combination =
                                            RewardCombination::multiplicative);

  [[nodiscard]] double lambda() const noexcept { return lambda_; }
  [[nodiscard]] RewardCombination combination() const noexcept {
    return combination_;
  }

 private:
  double lambda_;
  RewardCombination combination_;
};

struct RewardBreakdown {
  int format_point = 0;
  int point_in_box = 0;
  int format_bbox = 0;
  double iou = 0.0;
  double r_point = 0.0;
  double r_bbox = 0.0;
  double total = 0.0;
};

[[nodiscard]] int format_reward_point(std::string_view text);
[[nodiscard]] int format_reward_bbox(std::string_view text);

/// total = lambda * r_point + (1 - lambda) * r_bbox. Parse failures show up as
/// zero components, never as errors.
[[nodiscard]] RewardBreakdown compute_reward(std::string_view text,
                                             const PixelBox& gt_box,
                                             const RewardWeights& w);

struct RewardRecord {
  std::string response_text;
  PixelBox gt_box;
};

/// Scores a batch in parallel (OpenMP). Output order matches input order and
/// is bit-identical to compute_rewards_serial.
[[nodiscard]] std::vector<RewardBreakdown> compute_rewards(
    std::span<const RewardRecord> records, const RewardWeights& w);

[[nodiscard]] std::vector<RewardBreakdown> compute_rewards_serial(
    std::span<const RewardRecord> records, const RewardWeights& w);

}  // namespace zoomground
