// Copyright 2026 The zoomground Authors
// SPDX-License-Identifier: Apache-2.0

// zoomground command line: ground | eval | augment | score

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "zoomground/config.hpp"
#include "zoomground/eval.hpp"
#include "zoomground/reward.hpp"

namespace zg = zoomground;
using nlohmann::json;

namespace {

struct CommonPipelineFlags {
  std::string config_path;
  bool no_refine = false;
  std::string zoom_mode;
};

zg::AppConfig load_config(const std::string& path) {
  return path.empty() ? zg::AppConfig{} : zg::AppConfig::load(path);
}

zg::Pipeline make_pipeline(zg::AppConfig& app, const CommonPipelineFlags& flags) {
  if (flags.no_refine) app.pipeline.refinement_enabled = false;
  if (!flags.zoom_mode.empty()) app.pipeline.zoom_mode = zg::parse_zoom_mode(flags.zoom_mode);
  if (!app.grounder) throw std::invalid_argument("config has no 'grounder' backend");
  std::shared_ptr<zg::ChatBackend> refiner;
  if (app.pipeline.refinement_enabled) {
    if (!app.refiner) {
      throw std::invalid_argument(
          "refinement enabled but config has no 'refiner' backend (use --no-refine)");
    }
    refiner = zg::make_backend(*app.refiner);
  }
  return zg::Pipeline(app.pipeline, zg::make_backend(*app.grounder), refiner);
}

std::pair<int, int> parse_pair(const std::string& s, char sep) {
  std::istringstream in(s);
  int a = 0;
  int b = 0;
  char c = 0;
  if (!(in >> a >> c >> b) || c != sep || !in.eof()) {
    throw std::invalid_argument("cannot parse '" + s + "'");
  }
  return {a, b};
}

zg::GeometricAugmentSpec parse_pads(const std::string& s) {
  std::istringstream in(s);
  std::string part;
  std::vector<int> v;
  while (std::getline(in, part, ',')) v.push_back(std::stoi(part));
  if (v.size() != 4) throw std::invalid_argument("--pad expects l,t,r,b");
  zg::GeometricAugmentSpec spec;
  spec.pad_left = v[0];
  spec.pad_top = v[1];
  spec.pad_right = v[2];
  spec.pad_bottom = v[3];
  return spec;
}

std::vector<zg::VariantKind> parse_kinds(const std::string& s) {
  std::vector<zg::VariantKind> kinds;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (!part.empty()) kinds.push_back(zg::parse_variant_kind(part));
  }
  return kinds;
}

int run_ground(const std::string& image_path, const std::string& instruction,
               const CommonPipelineFlags& flags, const std::string& dump_dir,
               bool as_json) {
  auto app = load_config(flags.config_path);
  if (!dump_dir.empty()) app.pipeline.dump_zoom_crops = dump_dir;
  const auto pipeline = make_pipeline(app, flags);
  auto image = std::make_shared<const zg::Image>(zg::load_image(image_path));
  const auto result = pipeline.ground(instruction, image, "ground");

  if (as_json) {
    std::cout << zg::to_json(result).dump(2) << '\n';
    return 0;
  }
  if (result.unparseable()) {
    std::cout << "unparseable grounder output: " << *result.first_pass_error << '\n';
    return 0;
  }
  std::cout << "point " << result.final_point << "  box " << result.final_box
            << (result.final_is_null() ? "  (null action)" : "") << '\n';
  if (result.refined_instruction) {
    std::cout << "refined: " << *result.refined_instruction << '\n';
  }
  std::cout << "zoom: " << (result.zoom_applied ? "applied" : "not applied");
  for (auto f : result.fallbacks) std::cout << "  fallback=" << zg::to_string(f);
  std::cout << '\n';
  return 0;
}

int run_eval(const std::string& dataset, const std::string& images,
             const CommonPipelineFlags& flags, int workers, const std::string& out,
             const std::string& label) {
  auto app = load_config(flags.config_path);
  const auto pipeline = make_pipeline(app, flags);
  const auto load = zg::load_dataset(dataset);
  for (const auto& e : load.errors) {
    std::cerr << dataset << ':' << e.line << ": skipped: " << e.message << '\n';
  }
  zg::EvalOptions opts;
  opts.workers = workers;
  opts.label = label;
  const auto run = zg::evaluate(load.samples, pipeline, zg::directory_images(images), opts);
  zg::write_eval_outputs(out, run);
  std::cout << zg::report_to_text(run.report);
  std::cout << "samples " << run.report.total << "  correct " << run.report.correct
            << "  zoom_rate " << zg::format_fraction(run.report.zoom_rate)
            << "  errors " << run.report.errors << '\n';
  return 0;
}

int run_augment(const std::string& in_path, const std::string& out_path,
                const std::string& pad, const std::string& resize,
                const std::string& variants, std::optional<std::uint64_t> seed,
                const std::string& images, std::string images_out,
                const std::string& config_path) {
  auto app = load_config(config_path);
  const auto load = zg::load_dataset(in_path);
  for (const auto& e : load.errors) {
    std::cerr << in_path << ':' << e.line << ": skipped: " << e.message << '\n';
  }

  const bool geometric = !pad.empty() || !resize.empty();
  zg::GeometricAugmentSpec max_spec = pad.empty() ? zg::GeometricAugmentSpec{} : parse_pads(pad);
  if (!resize.empty()) {
    const auto [w, h] = parse_pair(resize, 'x');
    max_spec.target_size = zg::ImageSize{w, h};
  }
  max_spec.validate();
  if (geometric && images.empty()) {
    throw std::invalid_argument("--pad/--resize need --images to read screenshots");
  }
  if (images_out.empty()) {
    images_out = (std::filesystem::path(out_path).parent_path() / "augmented_images").string();
  }

  const auto kinds = parse_kinds(variants);
  std::shared_ptr<zg::ChatBackend> backend;
  if (!kinds.empty()) {
    const auto& spec = app.augmenter ? app.augmenter : app.refiner;
    if (!spec) throw std::invalid_argument("instruction variants need an 'augment.backend' or 'refiner' in the config");
    backend = zg::make_backend(*spec);
  }

  std::mt19937_64 rng(seed.value_or(0));
  std::vector<zg::Sample> out;
  std::size_t rejected = 0;
  for (const auto& sample : load.samples) {
    zg::Sample s = sample;
    if (geometric) {
      const auto spec = seed ? zg::sample_augment_spec(max_spec, rng) : max_spec;
      const auto image = zg::load_image(std::filesystem::path(images) / s.image_ref);
      auto res = zg::augment_geometry(s, image, spec);
      if (const auto* rej = std::get_if<zg::AugmentRejection>(&res)) {
        std::cerr << s.id << ": rejected: " << rej->reason << '\n';
        ++rejected;
        continue;
      }
      auto& aug = std::get<zg::AugmentedSample>(res);
      std::filesystem::create_directories(images_out);
      const auto file = std::filesystem::path(images_out) / (s.id + ".png");
      zg::save_png(aug.image, file);
      s = std::move(aug.sample);
      s.image_ref = std::filesystem::absolute(file).string();
    }
    if (backend) {
      auto res = zg::augment_instruction(s, *backend, kinds, app.augment_templates);
      for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
      out.insert(out.end(), res.samples.begin(), res.samples.end());
    } else {
      out.push_back(std::move(s));
    }
  }
  zg::write_dataset(out_path, out);
  std::cout << "wrote " << out.size() << " samples to " << out_path;
  if (rejected) std::cout << " (" << rejected << " rejected)";
  std::cout << '\n';
  return 0;
}

int run_score(const std::string& in_path, const std::string& out_path,
              std::optional<double> lambda, const std::string& config_path,
              bool serial) {
  auto app = load_config(config_path);
  zg::RewardWeights weights = app.reward;
  if (lambda) weights = zg::RewardWeights(*lambda, weights.combination());

  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open " + in_path);
  std::vector<zg::RewardRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = json::parse(line, nullptr, false);
    const auto bad = [&](const char* why) {
      return std::invalid_argument(in_path + ":" + std::to_string(lineno) + ": " + why);
    };
    if (!j.is_object() || !j.contains("response_text") || !j["response_text"].is_string()) {
      throw bad("expected {\"response_text\": string, \"gt_box\": [x1,y1,x2,y2]}");
    }
    const auto& gt = j.value("gt_box", json());
    if (!gt.is_array() || gt.size() != 4) throw bad("gt_box must be [x1,y1,x2,y2]");
    zg::PixelBox box{gt[0].get<int>(), gt[1].get<int>(), gt[2].get<int>(), gt[3].get<int>()};
    if (!box.valid()) throw bad("gt_box corners out of order");
    records.push_back({j["response_text"].get<std::string>(), box});
  }

  const auto rows = serial ? zg::compute_rewards_serial(records, weights)
                           : zg::compute_rewards(records, weights);
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (out_path != "-") {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot write " + out_path);
    out = &file;
  }
  for (const auto& r : rows) {
    *out << json{{"format_point", r.format_point},
                 {"point_in_box", r.point_in_box},
                 {"format_bbox", r.format_bbox},
                 {"iou", r.iou},
                 {"r_point", r.r_point},
                 {"r_bbox", r.r_bbox},
                 {"total", r.total}}
                .dump()
         << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GUI grounding with instruction refinement and conditional zoom-in"};
  app.require_subcommand(1);

  // ground
  auto* ground = app.add_subcommand("ground", "Ground one instruction on one screenshot");
  std::string g_image, g_instruction, g_dump;
  bool g_json = false;
  CommonPipelineFlags g_flags;
  ground->add_option("--image", g_image, "Screenshot (PNG or JPEG)")->required()->check(CLI::ExistingFile);
  ground->add_option("--instruction", g_instruction, "Natural-language instruction")->required();
  ground->add_flag("--no-refine", g_flags.no_refine, "Skip instruction refinement");
  ground->add_option("--zoom", g_flags.zoom_mode, "conditional | always | never")
      ->check(CLI::IsMember({"conditional", "always", "never"}));
  ground->add_option("--config", g_flags.config_path, "JSON config file")->check(CLI::ExistingFile);
  ground->add_option("--dump-zoom-crops", g_dump, "Directory for zoomed crops (PNG)");
  ground->add_flag("--json", g_json, "Print the full result as JSON");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate over an annotated dataset");
  std::string e_dataset, e_images, e_out, e_label = "run";
  int e_workers = 1;
  CommonPipelineFlags e_flags;
  eval->add_option("--dataset", e_dataset, "JSON Lines annotations")->required()->check(CLI::ExistingFile);
  eval->add_option("--images", e_images, "Screenshot directory")->required()->check(CLI::ExistingDirectory);
  eval->add_option("--config", e_flags.config_path, "JSON config file")->required()->check(CLI::ExistingFile);
  eval->add_option("--workers", e_workers, "Concurrent samples")->check(CLI::PositiveNumber);
  eval->add_option("--zoom", e_flags.zoom_mode, "conditional | always | never")
      ->check(CLI::IsMember({"conditional", "always", "never"}));
  eval->add_flag("--no-refine", e_flags.no_refine, "Skip instruction refinement");
  eval->add_option("--out", e_out, "Output directory")->required();
  eval->add_option("--label", e_label, "Row label in report.txt");

  // augment
  auto* augment = app.add_subcommand("augment", "Geometric and instruction augmentation");
  std::string a_in, a_out, a_pad, a_resize, a_variants, a_images, a_images_out, a_config;
  std::optional<std::uint64_t> a_seed;
  augment->add_option("--in", a_in, "Input JSON Lines")->required()->check(CLI::ExistingFile);
  augment->add_option("--out", a_out, "Output JSON Lines")->required();
  augment->add_option("--pad", a_pad, "Padding l,t,r,b in pixels (upper bounds when --seed is set)");
  augment->add_option("--resize", a_resize, "Resize target WxH");
  augment->add_option("--instruction-variants", a_variants,
                      "Comma list of with_location,without_location,intention,contextual");
  augment->add_option("--seed", a_seed, "Sample pads uniformly in [0, pad] with this seed");
  augment->add_option("--images", a_images, "Source screenshot directory");
  augment->add_option("--images-out", a_images_out, "Where augmented screenshots go");
  augment->add_option("--config", a_config, "JSON config (augment backend and templates)");

  // score
  auto* score = app.add_subcommand("score", "Batch reward scoring for RL trainers");
  std::string s_in, s_out = "-", s_config;
  std::optional<double> s_lambda;
  bool s_serial = false;
  score->add_option("--in", s_in, "JSON Lines of {response_text, gt_box}")->required()->check(CLI::ExistingFile);
  score->add_option("--out", s_out, "Output JSON Lines ('-' for stdout)");
  score->add_option("--lambda", s_lambda, "Point/box weight in [0,1]");
  score->add_option("--config", s_config, "JSON config (reward section)");
  score->add_flag("--serial", s_serial, "Use the serial reference scorer");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ground->parsed()) return run_ground(g_image, g_instruction, g_flags, g_dump, g_json);
    if (eval->parsed()) return run_eval(e_dataset, e_images, e_flags, e_workers, e_out, e_label);
    if (augment->parsed()) {
      return run_augment(a_in, a_out, a_pad, a_resize, a_variants, a_seed, a_images,
                         a_images_out, a_config);
    }
    if (score->parsed()) return run_score(s_in, s_out, s_lambda, s_config, s_serial);
  } catch (const zg::BackendError& e) {
    std::cerr << "backend error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
