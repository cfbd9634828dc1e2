// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

// Parser and serializer for the grounding model's answer format:
//
//   pyautogui.<verb>(x=<num>, y=<num>), <|box_start|>(<num>,<num>),(<num>,<num>)<|box_end|>
//
// with <verb> one of click / moveTo. Two modes are provided. Lenient mode is
// used at inference time: it tolerates surrounding whitespace, one pair of
// enclosing backticks, whitespace around punctuation, fractional numbers
// (rounded half up) and swapped box corners. Strict mode accepts only the
// canonical form emitted by serialize() and backs the format rewards.

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include "zoomground/geometry.hpp"

namespace zoomground {

enum class ActionVerb { click, move_to };

struct GroundingAction {
  ActionVerb verb = ActionVerb::click;
  PixelPoint point;
  PixelBox box;
  std::string raw_text;  // model output this action was parsed from, if any

  /// The infeasible-task answer: click (0,0) with the all-zero box.
  static GroundingAction null_action();

  // raw_text is provenance and does not take part in equality.
  friend bool operator==(const GroundingAction& a, const GroundingAction& b) {
    return a.verb == b.verb && a.point == b.point && a.box == b.box;
  }
};

enum class FormatErrorKind {
  missing_click,
  bad_coordinates,
  missing_box,
  bad_box,
  trailing_garbage,
};

struct FormatError {
  FormatErrorKind kind = FormatErrorKind::missing_click;
  std::string detail;
  std::size_t offset = 0;  // byte offset of the violation in the input
};

enum class ParseMode { lenient, strict };

using ParseResult = std::variant<GroundingAction, FormatError>;

/// Parses one model response. Total: never throws, every input maps to
/// exactly one action or the first grammar violation found left to right.
[[nodiscard]] ParseResult parse_grounding_output(
    std::string_view text, ParseMode mode = ParseMode::lenient);

/// Canonical form; parse_grounding_output(serialize(a), strict) == a for any
/// action with non-negative coordinates and ordered corners.
[[nodiscard]] std::string serialize(const GroundingAction& action);

[[nodiscard]] bool is_null(const GroundingAction& action) noexcept;

/// Click and box segments judged independently in strict mode, as needed by
/// the two format rewards. A segment is present iff it is canonical.
struct StrictSegments {
  std::optional<PixelPoint> point;
  std::optional<PixelBox> box;
};

[[nodiscard]] StrictSegments scan_strict_segments(std::string_view text);

[[nodiscard]] std::string_view to_string(ActionVerb v) noexcept;
[[nodiscard]] std::string_view to_string(FormatErrorKind k) noexcept;

inline bool parsed_ok(const ParseResult& r) noexcept {
  return std::holds_alternative<GroundingAction>(r);
}

std::ostream& operator<<(std::ostream& os, const GroundingAction& a);
std::ostream& operator<<(std::ostream& os, const FormatError& e);

}  // namespace zoomground
