// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "zoomground/backend.hpp"
#include "zoomground/geometry.hpp"
#include "zoomground/image.hpp"

namespace zoomground {

enum class UiType { text, icon };

[[nodiscard]] std::string_view to_string(UiType t) noexcept;

/// One annotated grounding target.
///
/// JSON Lines form: {"img_filename", "instruction", "bbox": [x1,y1,x2,y2],
/// "group", "ui_type"} plus optional "id", "infeasible", "img_size": [w,h]
/// and the augmentation provenance fields written by the augmenters.
struct Sample {
  std::string id;
  std::string image_ref;
  std::string instruction;
  PixelBox gt_box;
  std::string category;
  UiType ui_type = UiType::text;
  bool infeasible = false;  // gt_box is all-zero when set
  std::optional<ImageSize> image_size;

  std::optional<std::string> variant_kind;
  std::optional<std::string> source_instruction;
  std::optional<std::string> augment_model;
};

struct LineError {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct DatasetLoad {
  std::vector<Sample> samples;
  std::vector<LineError> errors;
};

/// Validates one annotation object; throws std::invalid_argument describing
/// the first violation.
[[nodiscard]] Sample sample_from_json(const nlohmann::json& j,
                                      std::string default_id);
[[nodiscard]] nlohmann::json to_json(const Sample& s);

/// Reads JSON Lines annotations. Bad lines are collected with their line
/// numbers; only an unreadable file throws (std::runtime_error).
[[nodiscard]] DatasetLoad load_dataset(const std::filesystem::path& path);
[[nodiscard]] DatasetLoad parse_dataset(std::istream& in);

void write_dataset(const std::filesystem::path& path,
                   const std::vector<Sample>& samples);

// ---------------------------------------------------------------------------
// Geometric augmentation

struct GeometricAugmentSpec {
  int pad_left = 0;
  int pad_top = 0;
  int pad_right = 0;
  int pad_bottom = 0;
  std::optional<ImageSize> target_size;  // absent keeps the padded size

  void validate() const;
};

/// x' = (x + offset_x) * scale_x, likewise for y. Boxes round corners half up.
struct GeometricTransform {
  double offset_x = 0.0;
  double offset_y = 0.0;
  double scale_x = 1.0;
  double scale_y = 1.0;

  static GeometricTransform from_spec(const GeometricAugmentSpec& spec,
                                      ImageSize source);

  [[nodiscard]] PixelPoint apply(PixelPoint p) const noexcept;
  [[nodiscard]] PixelBox apply(const PixelBox& b) const noexcept;
  [[nodiscard]] GeometricTransform inverse() const noexcept;
};

struct AugmentedSample {
  Sample sample;
  Image image;
};

struct AugmentRejection {
  std::string reason;
};

using GeometricAugmentResult = std::variant<AugmentedSample, AugmentRejection>;

/// Pads with black, optionally resizes, and remaps the target box. The
/// instruction is unchanged. A box that degenerates to zero area is rejected.
[[nodiscard]] GeometricAugmentResult augment_geometry(
    const Sample& s, const Image& image, const GeometricAugmentSpec& spec);

/// Draws each pad uniformly from [0, max_spec.pad_*]; target size is copied.
[[nodiscard]] GeometricAugmentSpec sample_augment_spec(
    const GeometricAugmentSpec& max_spec, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Instruction augmentation

enum class VariantKind { with_location, without_location, intention, contextual };

[[nodiscard]] std::string_view to_string(VariantKind k) noexcept;
/// Throws std::invalid_argument for unknown names.
[[nodiscard]] VariantKind parse_variant_kind(std::string_view s);

/// Prompt templates per variant kind, loaded from configuration. Templates
/// may use the placeholders {instruction} and {bbox}.
struct InstructionTemplates {
  std::string system_text;
  std::map<VariantKind, std::string> user_templates;

  /// {"system": "...", "with_location": "...", ...}
  static InstructionTemplates from_json(const nlohmann::json& j);
};

struct InstructionAugmentResult {
  std::vector<Sample> samples;  // the source sample first, then variants
  std::vector<std::string> warnings;
};

/// One variant per requested kind. Backend failures, empty replies and
/// replies identical to the source skip that variant with a warning.
[[nodiscard]] InstructionAugmentResult augment_instruction(
    const Sample& s, ChatBackend& backend, const std::vector<VariantKind>& kinds,
    const InstructionTemplates& templates,
    std::shared_ptr<const Image> image = nullptr);

}  // namespace zoomground
