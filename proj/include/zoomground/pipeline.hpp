// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end grounding: refine -> ground -> parse -> conditional zoom ->
// second grounding pass on the zoomed crop -> remap to original pixels.

#pragma once

#include <filesystem>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zoomground/action_grammar.hpp"
#include "zoomground/backend.hpp"
#include "zoomground/zoom.hpp"

namespace zoomground {

enum class ZoomMode {
  never,        // single pass
  conditional,  // second pass only when the first box is small
  always,       // second pass on every non-null answer (ablation)
};

[[nodiscard]] std::string_view to_string(ZoomMode m) noexcept;
/// Throws std::invalid_argument for anything but never/conditional/always.
[[nodiscard]] ZoomMode parse_zoom_mode(std::string_view s);

struct PipelineConfig {
  bool refinement_enabled = true;
  ZoomMode zoom_mode = ZoomMode::conditional;
  ZoomConfig zoom;
  std::optional<std::filesystem::path> dump_zoom_crops;  // PNG per zoomed sample

  void validate() const { zoom.validate(); }
};

enum class Fallback { refine_failed, second_parse_failed, second_null };

[[nodiscard]] std::string_view to_string(Fallback f) noexcept;

struct StageTimings {
  double refine_ms = 0.0;
  double first_pass_ms = 0.0;
  double zoom_ms = 0.0;
  double second_pass_ms = 0.0;
  double total_ms = 0.0;
};

struct GroundingResult {
  PixelPoint final_point;  // original-image pixels
  PixelBox final_box;      // original-image pixels
  GroundingAction first_pass = GroundingAction::null_action();
  std::optional<FormatError> first_pass_error;  // set => unparseable
  std::optional<GroundingAction> second_pass;   // zoomed-space answer
  std::optional<FormatError> second_pass_error;
  bool zoom_applied = false;
  std::optional<ZoomTransform> zoom;
  std::optional<std::string> refined_instruction;
  std::vector<Fallback> fallbacks;
  StageTimings timings;

  [[nodiscard]] bool unparseable() const noexcept {
    return first_pass_error.has_value();
  }
  /// Final answer is the null action (infeasible or unparseable).
  [[nodiscard]] bool final_is_null() const noexcept {
    return final_point == PixelPoint{0, 0} && final_box.is_zero();
  }
};

class Pipeline {
 public:
  /// `refiner` may be null when refinement is disabled.
  Pipeline(PipelineConfig cfg, std::shared_ptr<ChatBackend> grounder,
           std::shared_ptr<ChatBackend> refiner = nullptr);

  /// Grounds one instruction on one screenshot. Grounder transport failures
  /// propagate as BackendError; refiner failures fall back to the original
  /// instruction. `tag` names dumped zoom crops.
  [[nodiscard]] GroundingResult ground(std::string_view instruction,
                                       std::shared_ptr<const Image> image,
                                       std::string_view tag = {}) const;

  [[nodiscard]] const PipelineConfig& config() const noexcept { return cfg_; }

 private:
  PipelineConfig cfg_;
  std::shared_ptr<ChatBackend> grounder_;
  std::shared_ptr<ChatBackend> refiner_;
};

[[nodiscard]] nlohmann::json to_json(const GroundingAction& a);
[[nodiscard]] nlohmann::json to_json(const FormatError& e);
[[nodiscard]] nlohmann::json to_json(const ZoomTransform& t);
[[nodiscard]] nlohmann::json to_json(const GroundingResult& r);

}  // namespace zoomground
