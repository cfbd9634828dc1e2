// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include "zoomground/action_grammar.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <tuple>

namespace zoomground {
namespace {

constexpr std::string_view kPrefix = "pyautogui.";
constexpr std::string_view kBoxStart = "<|box_start|>";
constexpr std::string_view kBoxEnd = "<|box_end|>";

// Coordinates above this are rejected; no screen is a billion pixels wide and
// the bound keeps every accepted value representable as int.
constexpr double kMaxCoordinate = 1e9;

bool is_space(char ch) {
  return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\f' ||
         ch == '\v';
}

bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t begin, std::size_t end,
         ParseMode mode)
      : text_(text), pos_(begin), end_(end), mode_(mode) {}

  [[nodiscard]] std::size_t pos() const { return pos_; }
  [[nodiscard]] bool eof() const { return pos_ >= end_; }
  [[nodiscard]] bool lenient() const { return mode_ == ParseMode::lenient; }

  void skip_ws() {
    if (!lenient()) return;
    while (pos_ < end_ && is_space(text_[pos_])) ++pos_;
  }

  bool literal(std::string_view lit) {
    if (rest().substr(0, lit.size()) != lit) return false;
    pos_ += lit.size();
    return true;
  }

  // A punctuation token, optionally preceded by whitespace in lenient mode.
  bool token(std::string_view tok) {
    skip_ws();
    return literal(tok);
  }

  // The canonical single space; any whitespace run (including none) in
  // lenient mode.
  bool space() {
    if (lenient()) {
      skip_ws();
      return true;
    }
    return literal(" ");
  }

  std::optional<int> number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < end_ && is_digit(text_[pos_])) ++pos_;
    const std::size_t int_end = pos_;
    if (int_end == start) return std::nullopt;

    if (!lenient()) {
      if (text_[start] == '0' && int_end - start > 1) return std::nullopt;
      int value = 0;
      const auto [ptr, ec] =
          std::from_chars(text_.data() + start, text_.data() + int_end, value);
      if (ec != std::errc{} || ptr != text_.data() + int_end) return std::nullopt;
      if (value > kMaxCoordinate) return std::nullopt;
      return value;
    }

    if (pos_ < end_ && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < end_ && is_digit(text_[pos_])) ++pos_;
    }
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || !std::isfinite(value) || value > kMaxCoordinate) {
      return std::nullopt;
    }
    if (ptr != text_.data() + pos_) return std::nullopt;
    return round_half_up(value);
  }

  [[nodiscard]] std::string_view rest() const {
    return text_.substr(pos_, end_ - pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_;
  std::size_t end_;
  ParseMode mode_;
};

FormatError make_error(FormatErrorKind kind, std::string detail,
                       std::size_t offset) {
  return FormatError{kind, std::move(detail), offset};
}

struct ClickSegment {
  ActionVerb verb = ActionVerb::click;
  PixelPoint point;
};

using ClickResult = std::variant<ClickSegment, FormatError>;
using BoxResult = std::variant<PixelBox, FormatError>;

ClickResult parse_click(Cursor& c) {
  if (!c.literal(kPrefix)) {
    return make_error(FormatErrorKind::missing_click,
                      "expected 'pyautogui.'", c.pos());
  }
  ClickSegment seg;
  if (c.literal("click")) {
    seg.verb = ActionVerb::click;
  } else if (c.literal("moveTo")) {
    seg.verb = ActionVerb::move_to;
  } else {
    return make_error(FormatErrorKind::missing_click,
                      "expected verb 'click' or 'moveTo'", c.pos());
  }

  auto bad = [&](const char* what) {
    return make_error(FormatErrorKind::bad_coordinates, what, c.pos());
  };
  if (!c.token("(")) return bad("expected '('");
  if (!c.token("x") || !c.token("=")) return bad("expected 'x='");
  const auto x = c.number();
  if (!x) return bad("invalid x coordinate");
  if (!c.token(",") || !c.space()) return bad("expected ', ' after x");
  if (!c.token("y") || !c.token("=")) return bad("expected 'y='");
  const auto y = c.number();
  if (!y) return bad("invalid y coordinate");
  if (!c.token(")")) return bad("expected ')'");
  seg.point = {*x, *y};
  return seg;
}

// Parses "<|box_start|>(a,b),(c,d)<|box_end|>" starting at the box marker.
BoxResult parse_box_body(Cursor& c) {
  if (!c.literal(kBoxStart)) {
    return make_error(FormatErrorKind::missing_box, "expected '<|box_start|>'",
                      c.pos());
  }
  auto bad = [&](const char* what) {
    return make_error(FormatErrorKind::bad_box, what, c.pos());
  };
  int v[4] = {0, 0, 0, 0};
  for (int corner = 0; corner < 2; ++corner) {
    if (corner == 1 && !c.token(",")) return bad("expected ',' between corners");
    if (!c.token("(")) return bad("expected '('");
    const auto a = c.number();
    if (!a) return bad("invalid box coordinate");
    if (!c.token(",")) return bad("expected ',' inside corner");
    const auto b = c.number();
    if (!b) return bad("invalid box coordinate");
    if (!c.token(")")) return bad("expected ')'");
    v[2 * corner] = *a;
    v[2 * corner + 1] = *b;
  }
  c.skip_ws();
  if (!c.literal(kBoxEnd)) return bad("expected '<|box_end|>'");

  PixelBox box{v[0], v[1], v[2], v[3]};
  if (!box.valid()) {
    if (!c.lenient()) {
      return make_error(FormatErrorKind::bad_box, "box corners out of order",
                        c.pos());
    }
    box = normalized(box);
  }
  return box;
}

// ", <|box_start|>...<|box_end|>" following the click segment.
BoxResult parse_box_segment(Cursor& c) {
  c.skip_ws();
  if (c.eof()) {
    return make_error(FormatErrorKind::missing_box, "no box segment", c.pos());
  }
  if (!c.literal(",") || !c.space()) {
    return make_error(FormatErrorKind::missing_box,
                      "expected ', ' before box segment", c.pos());
  }
  return parse_box_body(c);
}

std::pair<std::size_t, std::size_t> trimmed_range(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  return {b, e};
}

}  // namespace

GroundingAction GroundingAction::null_action() {
  return GroundingAction{ActionVerb::click, {0, 0}, {0, 0, 0, 0}, {}};
}

ParseResult parse_grounding_output(std::string_view text, ParseMode mode) {
  std::size_t begin = 0;
  std::size_t end = text.size();

  if (mode == ParseMode::lenient) {
    std::tie(begin, end) = trimmed_range(text);
    if (end - begin >= 2 && text[begin] == '`' && text[end - 1] == '`') {
      const auto inner = trimmed_range(text.substr(begin + 1, end - begin - 2));
      end = begin + 1 + inner.second;
      begin = begin + 1 + inner.first;
    }
    if (text.substr(begin, end - begin).substr(0, kPrefix.size()) != kPrefix) {
      const auto found = text.substr(begin, end - begin).find(kPrefix);
      if (found != std::string_view::npos) {
        return make_error(FormatErrorKind::trailing_garbage,
                          "text outside the action code span", begin);
      }
    }
  }

  Cursor c(text, begin, end, mode);
  auto click = parse_click(c);
  if (auto* err = std::get_if<FormatError>(&click)) return std::move(*err);
  auto box = parse_box_segment(c);
  if (auto* err = std::get_if<FormatError>(&box)) return std::move(*err);
  c.skip_ws();
  if (!c.eof()) {
    return make_error(FormatErrorKind::trailing_garbage,
                      "unexpected text after '<|box_end|>'", c.pos());
  }

  const auto& seg = std::get<ClickSegment>(click);
  return GroundingAction{seg.verb, seg.point, std::get<PixelBox>(box),
                         std::string(text)};
}

StrictSegments scan_strict_segments(std::string_view text) {
  StrictSegments out;
  Cursor c(text, 0, text.size(), ParseMode::strict);
  const auto click = parse_click(c);
  if (const auto* seg = std::get_if<ClickSegment>(&click)) {
    out.point = seg->point;
    const auto box = parse_box_segment(c);
    if (const auto* b = std::get_if<PixelBox>(&box); b && c.eof()) out.box = *b;
    return out;
  }

  // Click segment is broken; the box segment is still judged on its own.
  const auto at = text.find(kBoxStart);
  if (at == std::string_view::npos) return out;
  Cursor bc(text, at, text.size(), ParseMode::strict);
  const auto box = parse_box_body(bc);
  if (const auto* b = std::get_if<PixelBox>(&box); b && bc.eof()) out.box = *b;
  return out;
}

std::string serialize(const GroundingAction& action) {
  std::ostringstream os;
  const auto& p = action.point;
  const auto& b = action.box;
  os << kPrefix << to_string(action.verb) << "(x=" << p.x << ", y=" << p.y
     << "), " << kBoxStart << '(' << b.x1 << ',' << b.y1 << "),(" << b.x2
     << ',' << b.y2 << ')' << kBoxEnd;
  return os.str();
}

bool is_null(const GroundingAction& action) noexcept {
  return action.point == PixelPoint{0, 0} && action.box.is_zero();
}

std::string_view to_string(ActionVerb v) noexcept {
  return v == ActionVerb::click ? "click" : "moveTo";
}

std::string_view to_string(FormatErrorKind k) noexcept {
  switch (k) {
    case FormatErrorKind::missing_click: return "missing_click";
    case FormatErrorKind::bad_coordinates: return "bad_coordinates";
    case FormatErrorKind::missing_box: return "missing_box";
    case FormatErrorKind::bad_box: return "bad_box";
    case FormatErrorKind::trailing_garbage: return "trailing_garbage";
  }
  return "unknown";
}

std::ostream& operator<<(std::ostream& os, const GroundingAction& a) {
  return os << serialize(a);
}

std::ostream& operator<<(std::ostream& os, const FormatError& e) {
  return os << to_string(e.kind) << " at " << e.offset << ": " << e.detail;
}

}  // namespace zoomground
