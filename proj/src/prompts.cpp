// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include "zoomground/prompts.hpp"

#include <stdexcept>

namespace zoomground {
namespace prompts {

// Byte-exact; tests/golden holds the reference copies. The misspelling
// "bouding" is part of the reference prompt and is kept.

const std::string_view kRefinementSystem = "You are a helpful GUI assistant.";

const std::string_view kRefinementUserTemplate =
    "You are given a task description and a screenshot of a GUI. The task can "
    "be completed with only one click.\n"
    "You need to find out the target to click, and then refine the task "
    "description to let user easily locate the target on the screen.\n"
    "Possible refinements include adding location information, describing "
    "visual features (color, size, text, icon shape, ...), clarifying "
    "ambiguous terms, etc.\n"
    "\n"
    "Only reply with the refined description. Do not add explanations.\n"
    "\n"
    "Task: {instruction}";

const std::string_view kGroundingSystem =
    "You are a GUI agent. You are given a task and a screenshot of the screen. "
    "You need to perform pyautogui click/moveTo action to complete the task, "
    "and then provide the bouding box of the target object. The answer format "
    "is `pyautogui.click(x=?, y=?), <|box_start|>(x1,y1),(x2,y2)<|box_end|>`. "
    "If the task is infeasible (e.g., the task is already completed, the "
    "target does not exist in the image, or the instruction is unrelated to "
    "the screenshot), output a null action exactly as follows: "
    "`pyautogui.click(x=0, y=0), <|box_start|>(0,0),(0,0)<|box_end|>`.";

const std::string_view kGroundingUserTemplate =
    "Please complete the following tasks by clicking using `pyautogui.click` "
    "and returning the bounding box:\n"
    "Task: {refined_instruction}";

std::string substitute(std::string_view tmpl, std::string_view placeholder,
                       std::string_view value) {
  std::string out(tmpl);
  const auto at = out.find(placeholder);
  if (at != std::string::npos) out.replace(at, placeholder.size(), value);
  return out;
}

}  // namespace prompts

PromptBundle build_refinement_prompt(std::string_view instruction,
                                     std::shared_ptr<const Image> image) {
  if (instruction.empty()) {
    throw std::invalid_argument("refinement prompt needs a non-empty instruction");
  }
  return {std::string(prompts::kRefinementSystem),
          prompts::substitute(prompts::kRefinementUserTemplate,
                              prompts::kInstructionPlaceholder, instruction),
          std::move(image)};
}

PromptBundle build_grounding_prompt(std::string_view refined_instruction,
                                    std::shared_ptr<const Image> image) {
  if (refined_instruction.empty()) {
    throw std::invalid_argument("grounding prompt needs a non-empty instruction");
  }
  return {std::string(prompts::kGroundingSystem),
          prompts::substitute(prompts::kGroundingUserTemplate,
                              prompts::kRefinedPlaceholder, refined_instruction),
          std::move(image)};
}

}  // namespace zoomground
