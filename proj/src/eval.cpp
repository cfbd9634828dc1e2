// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

#include "zoomground/eval.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace zoomground {
namespace {

using json = nlohmann::json;

const std::vector<std::string>& benchmark_domains() {
  static const std::vector<std::string> kDomains = {
      "Development", "Creative", "CAD", "Scientific", "Office", "OS"};
  return kDomains;
}

EvalOutcome outcome_for(std::size_t index, const Sample& s) {
  EvalOutcome o;
  o.index = index;
  o.sample_id = s.id;
  o.category = s.category;
  o.ui_type = s.ui_type;
  return o;
}

std::string percent(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << (*v * 100.0);
  return os.str();
}

}  // namespace

bool is_correct(const Sample& s, const GroundingResult& r) noexcept {
  if (s.infeasible) return r.final_is_null();
  return !r.final_is_null() && point_in_box(r.final_point, s.gt_box);
}

EvalReport aggregate(std::span<const EvalOutcome> outcomes, std::string label) {
  EvalReport r;
  r.label = std::move(label);
  for (const auto& o : outcomes) {
    auto& cell = r.cells[{o.category, o.ui_type}];
    ++cell.n;
    ++r.total;
    if (o.correct) {
      ++cell.correct;
      ++r.correct;
    }
    if (o.zoom_applied) ++r.zoomed;
    if (o.error) ++r.errors;
    if (o.unparseable) ++r.unparseable;
    for (auto f : o.fallbacks) ++r.fallback_counts[std::string(to_string(f))];
  }
  if (r.total > 0) {
    r.micro_avg = static_cast<double>(r.correct) / static_cast<double>(r.total);
    double sum = 0.0;
    for (const auto& [key, cell] : r.cells) sum += cell.accuracy();
    r.macro_avg = sum / static_cast<double>(r.cells.size());
    r.zoom_rate = static_cast<double>(r.zoomed) / static_cast<double>(r.total);
  }
  return r;
}

ImageProvider directory_images(std::filesystem::path image_root) {
  return [root = std::move(image_root)](const Sample& s) {
    return std::make_shared<const Image>(load_image(root / s.image_ref));
  };
}

EvalRun evaluate(const std::vector<Sample>& samples, const Pipeline& pipeline,
                 const ImageProvider& images, const EvalOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  EvalRun run;
  run.outcomes.resize(samples.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    while (!abort.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= samples.size()) return;
      const Sample& s = samples[i];
      EvalOutcome o = outcome_for(i, s);
      try {
        const auto image = images(s);
        const auto result = pipeline.ground(s.instruction, image, s.id);
        o.correct = is_correct(s, result);
        o.final_point = result.final_point;
        o.final_box = result.final_box;
        o.zoom_applied = result.zoom_applied;
        o.unparseable = result.unparseable();
        o.fallbacks = result.fallbacks;
      } catch (const BackendError& e) {
        o.error = e.what();
      } catch (const ImageError& e) {
        o.error = e.what();
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        abort = true;
        return;
      }
      o.correct = o.correct && !o.error;
      run.outcomes[i] = std::move(o);
    }
  };

  const int workers = std::max(1, opts.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  run.report = aggregate(run.outcomes, opts.label);
  run.report.wall_time_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - started)
                                .count();
  return run;
}

std::vector<std::string> ordered_categories(const EvalReport& r) {
  std::vector<std::string> present;
  for (const auto& [key, cell] : r.cells) {
    if (std::find(present.begin(), present.end(), key.first) == present.end()) {
      present.push_back(key.first);
    }
  }
  std::vector<std::string> out;
  for (const auto& d : benchmark_domains()) {
    if (std::find(present.begin(), present.end(), d) != present.end()) out.push_back(d);
  }
  std::vector<std::string> rest;
  for (const auto& c : present) {
    if (std::find(out.begin(), out.end(), c) == out.end()) rest.push_back(c);
  }
  std::sort(rest.begin(), rest.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::string format_fraction(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

json report_to_json(const EvalReport& r) {
  json cells = json::array();
  for (const auto& [key, cell] : r.cells) {
    cells.push_back({{"category", key.first},
                     {"ui_type", to_string(key.second)},
                     {"n", cell.n},
                     {"correct", cell.correct},
                     {"accuracy", cell.accuracy()}});
  }
  json j = {{"label", r.label},
            {"cells", cells},
            {"total", r.total},
            {"correct", r.correct},
            {"zoom_rate", r.zoom_rate},
            {"zoomed", r.zoomed},
            {"errors", r.errors},
            {"unparseable", r.unparseable},
            {"fallback_counts", r.fallback_counts},
            {"wall_time_ms", r.wall_time_ms}};
  if (r.micro_avg) j["micro_avg"] = *r.micro_avg;
  if (r.macro_avg) j["macro_avg"] = *r.macro_avg;
  return j;
}

std::string report_to_csv(const EvalReport& r) {
  std::ostringstream os;
  os << "category,ui_type,n,correct,accuracy\n";
  for (const auto& category : ordered_categories(r)) {
    for (auto ui : {UiType::text, UiType::icon}) {
      const auto it = r.cells.find({category, ui});
      if (it == r.cells.end()) continue;
      os << category << ',' << to_string(ui) << ',' << it->second.n << ','
         << it->second.correct << ',' << format_fraction(it->second.accuracy())
         << '\n';
    }
  }
  return os.str();
}

std::string report_to_text(const EvalReport& r) {
  const auto categories = ordered_categories(r);
  constexpr int kCol = 7;
  std::size_t label_w = std::max<std::size_t>(r.label.size(), 5) + 2;

  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(label_w)) << "Model";
  for (const auto& c : categories) {
    os << std::left << std::setw(2 * kCol) << c;
  }
  os << std::right << std::setw(kCol) << "Avg." << '\n';

  os << std::setw(static_cast<int>(label_w)) << "";
  for (std::size_t i = 0; i < categories.size(); ++i) {
    os << std::right << std::setw(kCol) << "Text" << std::setw(kCol) << "Icon";
  }
  os << '\n';

  os << std::left << std::setw(static_cast<int>(label_w)) << r.label;
  for (const auto& c : categories) {
    for (auto ui : {UiType::text, UiType::icon}) {
      const auto it = r.cells.find({c, ui});
      const auto acc = it == r.cells.end()
                           ? std::optional<double>{}
                           : std::optional<double>{it->second.accuracy()};
      os << std::right << std::setw(kCol) << percent(acc);
    }
  }
  os << std::right << std::setw(kCol) << percent(r.micro_avg) << '\n';
  return os.str();
}

json to_json(const EvalOutcome& o) {
  auto fallbacks = json::array();
  for (auto f : o.fallbacks) fallbacks.push_back(to_string(f));
  return {{"index", o.index},
          {"sample_id", o.sample_id},
          {"category", o.category},
          {"ui_type", to_string(o.ui_type)},
          {"correct", o.correct},
          {"final_point", {o.final_point.x, o.final_point.y}},
          {"final_box", {o.final_box.x1, o.final_box.y1, o.final_box.x2, o.final_box.y2}},
          {"zoom_applied", o.zoom_applied},
          {"unparseable", o.unparseable},
          {"fallbacks", fallbacks},
          {"error", o.error ? json(*o.error) : json(nullptr)}};
}

void write_eval_outputs(const std::filesystem::path& dir, const EvalRun& run) {
  std::filesystem::create_directories(dir);
  auto write = [&dir](const char* name, const std::string& text) {
    std::ofstream out(dir / name);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << text;
  };
  write("report.json", report_to_json(run.report).dump(2) + "\n");
  write("report.csv", report_to_csv(run.report));
  write("report.txt", report_to_text(run.report));
  std::string lines;
  for (const auto& o : run.outcomes) lines += to_json(o).dump() + "\n";
  write("outcomes.jsonl", lines);
}

}  // namespace zoomground
