// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include "zoomground/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "zoomground/kernels.hpp"
#include "zoomground/prompts.hpp"

namespace zoomground {
namespace {

using json = nlohmann::json;

int coordinate(const json& v, const char* field) {
  if (!v.is_number()) {
    throw std::invalid_argument(std::string(field) + " must hold numbers");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d) || std::abs(d) > 1e9) {
    throw std::invalid_argument(std::string(field) + " value out of range");
  }
  return round_half_up(d);
}

std::string required_string(const json& j, const char* field) {
  const auto it = j.find(field);
  if (it == j.end() || !it->is_string()) {
    throw std::invalid_argument(std::string("missing string field '") + field + "'");
  }
  auto s = it->get<std::string>();
  if (s.empty()) {
    throw std::invalid_argument(std::string("field '") + field + "' is empty");
  }
  return s;
}

std::string box_text(const PixelBox& b) {
  std::ostringstream os;
  os << '[' << b.x1 << ", " << b.y1 << ", " << b.x2 << ", " << b.y2 << ']';
  return os.str();
}

}  // namespace

std::string_view to_string(UiType t) noexcept {
  return t == UiType::text ? "text" : "icon";
}

Sample sample_from_json(const json& j, std::string default_id) {
  if (!j.is_object()) throw std::invalid_argument("annotation must be a JSON object");
  Sample s;
  s.id = std::move(default_id);
  if (const auto it = j.find("id"); it != j.end()) {
    if (it->is_string()) {
      s.id = it->get<std::string>();
    } else if (it->is_number_integer()) {
      s.id = std::to_string(it->get<long long>());
    } else {
      throw std::invalid_argument("'id' must be a string or integer");
    }
  }
  s.image_ref = required_string(j, "img_filename");
  s.instruction = required_string(j, "instruction");
  s.category = required_string(j, "group");

  const auto ui = required_string(j, "ui_type");
  if (ui == "text") {
    s.ui_type = UiType::text;
  } else if (ui == "icon") {
    s.ui_type = UiType::icon;
  } else {
    throw std::invalid_argument("ui_type must be 'text' or 'icon', got '" + ui + "'");
  }

  const auto bbox = j.find("bbox");
  if (bbox == j.end() || !bbox->is_array() || bbox->size() != 4) {
    throw std::invalid_argument("'bbox' must be an array [x1, y1, x2, y2]");
  }
  s.gt_box = {coordinate((*bbox)[0], "bbox"), coordinate((*bbox)[1], "bbox"),
              coordinate((*bbox)[2], "bbox"), coordinate((*bbox)[3], "bbox")};
  if (!s.gt_box.valid()) {
    throw std::invalid_argument("bbox corners out of order (need x1<=x2, y1<=y2)");
  }

  if (const auto it = j.find("infeasible"); it != j.end()) {
    if (!it->is_boolean()) throw std::invalid_argument("'infeasible' must be boolean");
    s.infeasible = it->get<bool>();
  }
  if (s.infeasible && !s.gt_box.is_zero()) {
    throw std::invalid_argument("infeasible sample must have bbox [0,0,0,0]");
  }
  if (!s.infeasible && s.gt_box.area() <= 0.0) {
    throw std::invalid_argument("bbox has zero area");
  }
  if (!s.infeasible && (s.gt_box.x1 < 0 || s.gt_box.y1 < 0)) {
    throw std::invalid_argument("bbox has negative coordinates");
  }

  if (const auto it = j.find("img_size"); it != j.end()) {
    if (!it->is_array() || it->size() != 2) {
      throw std::invalid_argument("'img_size' must be [width, height]");
    }
    const ImageSize size{coordinate((*it)[0], "img_size"),
                         coordinate((*it)[1], "img_size")};
    if (!size.valid()) throw std::invalid_argument("img_size must be positive");
    if (!s.infeasible && clamp_box(s.gt_box, size) != s.gt_box) {
      throw std::invalid_argument("bbox lies outside img_size");
    }
    s.image_size = size;
  }

  auto optional_string = [&j](const char* field) -> std::optional<std::string> {
    const auto it = j.find(field);
    if (it == j.end() || !it->is_string()) return std::nullopt;
    return it->get<std::string>();
  };
  s.variant_kind = optional_string("variant_kind");
  s.source_instruction = optional_string("source_instruction");
  s.augment_model = optional_string("augment_model");
  return s;
}

json to_json(const Sample& s) {
  json j = {{"id", s.id},
            {"img_filename", s.image_ref},
            {"instruction", s.instruction},
            {"bbox", {s.gt_box.x1, s.gt_box.y1, s.gt_box.x2, s.gt_box.y2}},
            {"group", s.category},
            {"ui_type", to_string(s.ui_type)}};
  if (s.infeasible) j["infeasible"] = true;
  if (s.image_size) j["img_size"] = {s.image_size->width, s.image_size->height};
  if (s.variant_kind) j["variant_kind"] = *s.variant_kind;
  if (s.source_instruction) j["source_instruction"] = *s.source_instruction;
  if (s.augment_model) j["augment_model"] = *s.augment_model;
  return j;
}

DatasetLoad parse_dataset(std::istream& in) {
  DatasetLoad out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char ch) { return std::isspace(ch) != 0; })) {
      continue;
    }
    const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
      out.errors.push_back({lineno, "invalid JSON"});
      continue;
    }
    try {
      out.samples.push_back(sample_from_json(j, "line-" + std::to_string(lineno)));
    } catch (const std::invalid_argument& e) {
      out.errors.push_back({lineno, e.what()});
    }
  }
  return out;
}

DatasetLoad load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path.string());
  return parse_dataset(in);
}

void write_dataset(const std::filesystem::path& path,
                   const std::vector<Sample>& samples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset: " + path.string());
  for (const auto& s : samples) out << to_json(s).dump() << '\n';
}

// ---------------------------------------------------------------------------

void GeometricAugmentSpec::validate() const {
  if (pad_left < 0 || pad_top < 0 || pad_right < 0 || pad_bottom < 0) {
    throw std::invalid_argument("pads must be non-negative");
  }
  if (target_size && !target_size->valid()) {
    throw std::invalid_argument("resize target must be positive");
  }
}

GeometricTransform GeometricTransform::from_spec(const GeometricAugmentSpec& spec,
                                                 ImageSize source) {
  const ImageSize padded{source.width + spec.pad_left + spec.pad_right,
                         source.height + spec.pad_top + spec.pad_bottom};
  const ImageSize target = spec.target_size.value_or(padded);
  return {static_cast<double>(spec.pad_left), static_cast<double>(spec.pad_top),
          static_cast<double>(target.width) / padded.width,
          static_cast<double>(target.height) / padded.height};
}

PixelPoint GeometricTransform::apply(PixelPoint p) const noexcept {
  return {round_half_up((p.x + offset_x) * scale_x),
          round_half_up((p.y + offset_y) * scale_y)};
}

PixelBox GeometricTransform::apply(const PixelBox& b) const noexcept {
  const auto a = apply(PixelPoint{b.x1, b.y1});
  const auto c = apply(PixelPoint{b.x2, b.y2});
  return {a.x, a.y, c.x, c.y};
}

GeometricTransform GeometricTransform::inverse() const noexcept {
  return {-offset_x * scale_x, -offset_y * scale_y, 1.0 / scale_x, 1.0 / scale_y};
}

GeometricAugmentResult augment_geometry(const Sample& s, const Image& image,
                                        const GeometricAugmentSpec& spec) {
  spec.validate();
  Image padded = kernels::pad_constant(image, spec.pad_left, spec.pad_top,
                                       spec.pad_right, spec.pad_bottom, 0);
  const auto transform = GeometricTransform::from_spec(spec, image.size());

  Sample out = s;
  if (!s.infeasible) {
    out.gt_box = transform.apply(s.gt_box);
    if (out.gt_box.area() <= 0.0) {
      return AugmentRejection{"target box collapses to zero area after resize"};
    }
  }

  Image result;
  if (spec.target_size && *spec.target_size != padded.size()) {
    result = Image(spec.target_size->width, spec.target_size->height,
                   padded.channels);
    kernels::resize_bilinear(padded, {0, 0, padded.width, padded.height}, result);
  } else {
    result = std::move(padded);
  }
  out.image_size = result.size();
  return AugmentedSample{std::move(out), std::move(result)};
}

GeometricAugmentSpec sample_augment_spec(const GeometricAugmentSpec& max_spec,
                                         std::mt19937_64& rng) {
  max_spec.validate();
  auto draw = [&rng](int hi) {
    return std::uniform_int_distribution<int>(0, hi)(rng);
  };
  GeometricAugmentSpec spec;
  spec.pad_left = draw(max_spec.pad_left);
  spec.pad_top = draw(max_spec.pad_top);
  spec.pad_right = draw(max_spec.pad_right);
  spec.pad_bottom = draw(max_spec.pad_bottom);
  spec.target_size = max_spec.target_size;
  return spec;
}

// ---------------------------------------------------------------------------

std::string_view to_string(VariantKind k) noexcept {
  switch (k) {
    case VariantKind::with_location: return "with_location";
    case VariantKind::without_location: return "without_location";
    case VariantKind::intention: return "intention";
    case VariantKind::contextual: return "contextual";
  }
  return "unknown";
}

VariantKind parse_variant_kind(std::string_view s) {
  for (auto k : {VariantKind::with_location, VariantKind::without_location,
                 VariantKind::intention, VariantKind::contextual}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown instruction variant kind: " + std::string(s));
}

InstructionTemplates InstructionTemplates::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("augment templates must be an object");
  InstructionTemplates t;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) {
      throw std::invalid_argument("template '" + key + "' must be a string");
    }
    if (key == "system") {
      t.system_text = value.get<std::string>();
    } else {
      t.user_templates[parse_variant_kind(key)] = value.get<std::string>();
    }
  }
  return t;
}

InstructionAugmentResult augment_instruction(const Sample& s, ChatBackend& backend,
                                             const std::vector<VariantKind>& kinds,
                                             const InstructionTemplates& templates,
                                             std::shared_ptr<const Image> image) {
  InstructionAugmentResult out;
  out.samples.push_back(s);
  for (const auto kind : kinds) {
    const auto tmpl = templates.user_templates.find(kind);
    if (tmpl == templates.user_templates.end()) {
      out.warnings.push_back("no template configured for variant kind '" +
                             std::string(to_string(kind)) + "'");
      continue;
    }
    PromptBundle bundle;
    bundle.system_text = templates.system_text;
    bundle.user_text = prompts::substitute(
        prompts::substitute(tmpl->second, "{instruction}", s.instruction),
        "{bbox}", box_text(s.gt_box));
    bundle.image = image;

    std::string text;
    try {
      text = backend.complete(bundle).text;
    } catch (const BackendError& e) {
      out.warnings.push_back(s.id + ": " + std::string(to_string(kind)) +
                             " variant skipped: " + e.what());
      continue;
    }
    const auto first = text.find_first_not_of(" \t\r\n");
    const auto last = text.find_last_not_of(" \t\r\n");
    text = first == std::string::npos ? std::string()
                                      : text.substr(first, last - first + 1);
    if (text.empty() || text == s.instruction) {
      out.warnings.push_back(s.id + ": " + std::string(to_string(kind)) +
                             " variant skipped: reply empty or unchanged");
      continue;
    }

    Sample variant = s;
    variant.id = s.id + "#" + std::string(to_string(kind));
    variant.instruction = std::move(text);
    variant.variant_kind = std::string(to_string(kind));
    variant.source_instruction = s.instruction;
    variant.augment_model = backend.model_name();
    out.samples.push_back(std::move(variant));
  }
  return out;
}

}  // namespace zoomground
