// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include "zoomground/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <stdexcept>

namespace zoomground {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char ch) { return std::isspace(ch) != 0; });
}

std::string crop_file_name(std::string_view tag) {
  std::string name = tag.empty() ? std::string("sample") : std::string(tag);
  for (char& ch : name) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') {
      ch = '_';
    }
  }
  return name + "_zoom.png";
}

nlohmann::json point_json(PixelPoint p) { return {p.x, p.y}; }
nlohmann::json box_json(const PixelBox& b) { return {b.x1, b.y1, b.x2, b.y2}; }
nlohmann::json size_json(ImageSize s) { return {s.width, s.height}; }

}  // namespace

std::string_view to_string(ZoomMode m) noexcept {
  switch (m) {
    case ZoomMode::never: return "never";
    case ZoomMode::conditional: return "conditional";
    case ZoomMode::always: return "always";
  }
  return "unknown";
}

ZoomMode parse_zoom_mode(std::string_view s) {
  if (s == "never") return ZoomMode::never;
  if (s == "conditional") return ZoomMode::conditional;
  if (s == "always") return ZoomMode::always;
  throw std::invalid_argument("zoom mode must be never, conditional or always");
}

std::string_view to_string(Fallback f) noexcept {
  switch (f) {
    case Fallback::refine_failed: return "refine_failed";
    case Fallback::second_parse_failed: return "second_parse_failed";
    case Fallback::second_null: return "second_null";
  }
  return "unknown";
}

Pipeline::Pipeline(PipelineConfig cfg, std::shared_ptr<ChatBackend> grounder,
                   std::shared_ptr<ChatBackend> refiner)
    : cfg_(std::move(cfg)),
      grounder_(std::move(grounder)),
      refiner_(std::move(refiner)) {
  cfg_.validate();
  if (!grounder_) throw std::invalid_argument("pipeline needs a grounding backend");
  if (cfg_.refinement_enabled && !refiner_) {
    throw std::invalid_argument("refinement enabled but no refiner backend");
  }
}

GroundingResult Pipeline::ground(std::string_view instruction,
                                 std::shared_ptr<const Image> image,
                                 std::string_view tag) const {
  if (instruction.empty()) throw std::invalid_argument("empty instruction");
  if (!image || image->empty()) throw std::invalid_argument("missing image");

  GroundingResult result;
  const auto t_total = Clock::now();

  std::string task(instruction);
  if (cfg_.refinement_enabled) {
    const auto t0 = Clock::now();
    try {
      auto outcome = refiner_->complete(build_refinement_prompt(instruction, image));
      if (blank(outcome.text)) {
        result.fallbacks.push_back(Fallback::refine_failed);
      } else {
        task = std::move(outcome.text);
        result.refined_instruction = task;
      }
    } catch (const BackendError&) {
      result.fallbacks.push_back(Fallback::refine_failed);
    }
    result.timings.refine_ms = ms_since(t0);
  }

  const auto t_first = Clock::now();
  const auto first = grounder_->complete(build_grounding_prompt(task, image));
  result.timings.first_pass_ms = ms_since(t_first);

  auto parsed = parse_grounding_output(first.text, ParseMode::lenient);
  if (auto* err = std::get_if<FormatError>(&parsed)) {
    result.first_pass_error = std::move(*err);
    result.first_pass.raw_text = first.text;
    result.timings.total_ms = ms_since(t_total);
    return result;
  }
  result.first_pass = std::move(std::get<GroundingAction>(parsed));
  result.final_point = clamp_point(result.first_pass.point, image->size());
  result.final_box = clamp_box(result.first_pass.box, image->size());

  if (is_null(result.first_pass)) {
    result.final_point = {0, 0};
    result.final_box = {};
    result.timings.total_ms = ms_since(t_total);
    return result;
  }

  const bool zoom = cfg_.zoom_mode == ZoomMode::always ||
                    (cfg_.zoom_mode == ZoomMode::conditional &&
                     should_zoom(result.first_pass.box, cfg_.zoom));
  if (!zoom) {
    result.timings.total_ms = ms_since(t_total);
    return result;
  }

  const auto t_zoom = Clock::now();
  const ZoomTransform transform =
      compute_zoom_window(result.first_pass.point, image->size(), cfg_.zoom);
  auto zoomed = std::make_shared<const Image>(crop_and_resize(*image, transform));
  if (cfg_.dump_zoom_crops) {
    std::filesystem::create_directories(*cfg_.dump_zoom_crops);
    save_png(*zoomed, *cfg_.dump_zoom_crops / crop_file_name(tag));
  }
  result.zoom_applied = true;
  result.zoom = transform;
  result.timings.zoom_ms = ms_since(t_zoom);

  const auto t_second = Clock::now();
  const auto second = grounder_->complete(build_grounding_prompt(task, zoomed));
  result.timings.second_pass_ms = ms_since(t_second);

  auto parsed2 = parse_grounding_output(second.text, ParseMode::lenient);
  if (auto* err = std::get_if<FormatError>(&parsed2)) {
    result.second_pass_error = std::move(*err);
    result.fallbacks.push_back(Fallback::second_parse_failed);
  } else {
    auto action = std::move(std::get<GroundingAction>(parsed2));
    if (is_null(action)) {
      result.fallbacks.push_back(Fallback::second_null);
    } else {
      result.final_point = map_point_to_original(action.point, transform);
      result.final_box = map_box_to_original(action.box, transform);
    }
    result.second_pass = std::move(action);
  }
  result.timings.total_ms = ms_since(t_total);
  return result;
}

nlohmann::json to_json(const GroundingAction& a) {
  return {{"verb", to_string(a.verb)},
          {"point", point_json(a.point)},
          {"box", box_json(a.box)},
          {"is_null", is_null(a)},
          {"raw_text", a.raw_text}};
}

nlohmann::json to_json(const FormatError& e) {
  return {{"kind", to_string(e.kind)}, {"detail", e.detail}, {"offset", e.offset}};
}

nlohmann::json to_json(const ZoomTransform& t) {
  return {{"crop_origin", point_json(t.crop_origin)},
          {"crop_size", size_json(t.crop_size)},
          {"source_size", size_json(t.source_size)},
          {"output_size", size_json(t.output_size)},
          {"scale_x", t.scale_x},
          {"scale_y", t.scale_y}};
}

nlohmann::json to_json(const GroundingResult& r) {
  nlohmann::json j;
  j["final_point"] = point_json(r.final_point);
  j["final_box"] = box_json(r.final_box);
  j["first_pass"] = to_json(r.first_pass);
  j["first_pass_error"] =
      r.first_pass_error ? to_json(*r.first_pass_error) : nlohmann::json(nullptr);
  j["second_pass"] = r.second_pass ? to_json(*r.second_pass) : nlohmann::json(nullptr);
  j["second_pass_error"] =
      r.second_pass_error ? to_json(*r.second_pass_error) : nlohmann::json(nullptr);
  j["zoom_applied"] = r.zoom_applied;
  j["zoom_transform"] = r.zoom ? to_json(*r.zoom) : nlohmann::json(nullptr);
  j["refined_instruction"] = r.refined_instruction
                                 ? nlohmann::json(*r.refined_instruction)
                                 : nlohmann::json(nullptr);
  j["unparseable"] = r.unparseable();
  auto fallbacks = nlohmann::json::array();
  for (auto f : r.fallbacks) fallbacks.push_back(to_string(f));
  j["fallbacks"] = fallbacks;
  j["timings_ms"] = {{"refine", r.timings.refine_ms},
                     {"first_pass", r.timings.first_pass_ms},
                     {"zoom", r.timings.zoom_ms},
                     {"second_pass", r.timings.second_pass_ms},
                     {"total", r.timings.total_ms}};
  return j;
}

}  // namespace zoomground
