// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

// Benchmark harness: runs the pipeline over a dataset and reports
// point-in-target accuracy per (category x ui_type) cell.

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zoomground/dataset.hpp"
#include "zoomground/pipeline.hpp"

namespace zoomground {

struct EvalOutcome {
  std::size_t index = 0;  // position in the input sample list
  std::string sample_id;
  std::string category;
  UiType ui_type = UiType::text;
  bool correct = false;
  PixelPoint final_point;
  PixelBox final_box;
  bool zoom_applied = false;
  bool unparseable = false;
  std::vector<Fallback> fallbacks;
  std::optional<std::string> error;  // set => correct == false
};

struct CellStats {
  std::size_t n = 0;
  std::size_t correct = 0;

  [[nodiscard]] double accuracy() const noexcept {
    return n == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(n);
  }
};

using CellKey = std::pair<std::string, UiType>;

struct EvalReport {
  std::string label = "run";
  std::map<CellKey, CellStats> cells;
  std::size_t total = 0;
  std::size_t correct = 0;
  std::optional<double> micro_avg;  // absent for an empty run
  std::optional<double> macro_avg;
  double zoom_rate = 0.0;
  std::size_t zoomed = 0;
  std::size_t errors = 0;
  std::size_t unparseable = 0;
  std::map<std::string, std::size_t> fallback_counts;
  double wall_time_ms = 0.0;
};

/// Success criterion for one sample: an infeasible sample needs the null
/// answer; any other sample needs a non-null final point inside gt_box.
[[nodiscard]] bool is_correct(const Sample& s, const GroundingResult& r) noexcept;

/// Order-independent aggregation of per-sample outcomes.
[[nodiscard]] EvalReport aggregate(std::span<const EvalOutcome> outcomes,
                                   std::string label = "run");

using ImageProvider =
    std::function<std::shared_ptr<const Image>(const Sample& sample)>;

/// Loads `image_root / sample.image_ref` from disk.
[[nodiscard]] ImageProvider directory_images(std::filesystem::path image_root);

struct EvalOptions {
  int workers = 1;
  std::string label = "run";
};

struct EvalRun {
  std::vector<EvalOutcome> outcomes;  // in input order
  EvalReport report;
};

/// Evaluates every sample, up to `workers` at once. Backend transport errors
/// and unreadable images mark the sample incorrect; any other exception (for
/// instance an exhausted mock script) aborts the run and is rethrown.
[[nodiscard]] EvalRun evaluate(const std::vector<Sample>& samples,
                               const Pipeline& pipeline,
                               const ImageProvider& images,
                               const EvalOptions& opts = {});

// Report emitters.

/// Display order of the benchmark domains; other categories follow sorted.
[[nodiscard]] std::vector<std::string> ordered_categories(const EvalReport& r);

[[nodiscard]] nlohmann::json report_to_json(const EvalReport& r);
[[nodiscard]] std::string report_to_csv(const EvalReport& r);
/// Aligned table: Text/Icon per domain, then Avg., values in percent.
[[nodiscard]] std::string report_to_text(const EvalReport& r);
[[nodiscard]] nlohmann::json to_json(const EvalOutcome& o);

/// Writes report.json, report.csv, report.txt and outcomes.jsonl into `dir`.
void write_eval_outputs(const std::filesystem::path& dir, const EvalRun& run);

/// Shortest round-trip decimal with at least one fractional digit ("1.0").
[[nodiscard]] std::string format_fraction(double v);

}  // namespace zoomground
