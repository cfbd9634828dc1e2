// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "zoomground/image.hpp"

namespace zoomground {

struct PromptBundle {
  std::string system_text;
  std::string user_text;
  std::shared_ptr<const Image> image;  // may be null for text-only requests
};

namespace prompts {

inline constexpr std::string_view kInstructionPlaceholder = "{instruction}";
inline constexpr std::string_view kRefinedPlaceholder = "{refined_instruction}";

extern const std::string_view kRefinementSystem;
extern const std::string_view kRefinementUserTemplate;
extern const std::string_view kGroundingSystem;
extern const std::string_view kGroundingUserTemplate;

/// Replaces the first occurrence of `placeholder` with `value`, verbatim.
[[nodiscard]] std::string substitute(std::string_view tmpl,
                                     std::string_view placeholder,
                                     std::string_view value);

}  // namespace prompts

/// Rewrite request for the refinement model. Throws std::invalid_argument on
/// an empty instruction.
[[nodiscard]] PromptBundle build_refinement_prompt(
    std::string_view instruction, std::shared_ptr<const Image> image);

/// Grounding request; the answer is expected in the pyautogui action format.
/// Throws std::invalid_argument on an empty instruction.
[[nodiscard]] PromptBundle build_grounding_prompt(
    std::string_view refined_instruction, std::shared_ptr<const Image> image);

}  // namespace zoomground
