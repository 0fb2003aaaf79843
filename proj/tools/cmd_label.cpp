/* Copyright 2026 The Weedkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include <atomic>
#include <filesystem>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include "commands.hpp"
#include "weedkit/file_util.hpp"
#include "weedkit/image_io.hpp"
#include "weedkit/pixel_pipeline.hpp"
#include "weedkit/voc.hpp"

namespace weedkit::cli {
namespace {

namespace fs = std::filesystem;

struct LabelOptions {
  std::string input;
  std::string output;
  std::string species;
  int week = 0;
  pipeline::MaskConfig mask;
  int connectivity = 8;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
};

enum class Status { kAnnotated, kNoRegions, kFailed };

struct Outcome {
  Status status = Status::kFailed;
  std::size_t boxes = 0;
  std::string message;
};

std::string_view StatusName(Status s) {
  switch (s) {
    case Status::kAnnotated: return "annotated";
    case Status::kNoRegions: return "no_regions";
    case Status::kFailed: return "failed";
  }
  return "failed";
}

Outcome LabelOne(const fs::path& image_path, const fs::path& out_dir, const ClassLabel& label,
                 const pipeline::MaskConfig& config) {
  Outcome out;
  try {
    const auto image = imageio::ReadImage(image_path);
    auto ann = pipeline::AutoAnnotate(image, label, config, image_path.filename().string());
    ann.folder = out_dir.filename().string();
    io::WriteFileAtomic(out_dir / image_path.filename(), io::ReadFile(image_path));
    io::WriteVocFile(out_dir / (ann.image_id + ".xml"), ann);
    out.status = Status::kAnnotated;
    out.boxes = ann.objects.size();
  } catch (const Error& e) {
    out.status = e.code() == ErrorCode::kNoRegionsFound ? Status::kNoRegions : Status::kFailed;
    out.message = e.what();
  }
  return out;
}

int RunLabel(const LabelOptions& opt, const GlobalOptions& global) {
  const Taxonomy taxonomy = global.LoadTaxonomy();
  const ClassLabel label = taxonomy.MakeLabel(opt.species, opt.week);
  pipeline::MaskConfig config = opt.mask;
  config.connectivity = static_cast<pipeline::Connectivity>(opt.connectivity);
  config.Validate();

  const fs::path in_dir(opt.input);
  const fs::path out_dir(opt.output);
  if (!fs::is_directory(in_dir)) {
    return ReportError(kExitIo, "input is not a readable directory: " + opt.input);
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    return ReportError(kExitIo, "cannot create output directory " + opt.output);
  }
  if (fs::equivalent(in_dir, out_dir)) {
    return ReportError(kExitUsage, "input and output directories must differ");
  }

  std::vector<fs::path> images;
  for (const auto& p : io::ListFiles(in_dir)) {
    if (io::IsImagePath(p)) images.push_back(p);
  }

  // Two files with the same stem would write the same XML; only the first
  // (in name order) is labelled.
  std::vector<Outcome> outcomes(images.size());
  std::vector<bool> todo(images.size(), true);
  std::set<std::string> stems;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!stems.insert(images[i].stem().string()).second) {
      todo[i] = false;
      outcomes[i].message = "duplicate image stem '" + images[i].stem().string() + "'";
    }
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < images.size(); i = next++) {
      if (todo[i]) outcomes[i] = LabelOne(images[i], out_dir, label, config);
    }
  };
  const int threads = std::clamp(opt.workers, 1, 256);
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }

  std::ostringstream manifest;
  manifest << "# image_id\tstatus\tboxes\tsource\n";
  std::size_t annotated = 0, no_regions = 0, failed = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& o = outcomes[i];
    manifest << images[i].stem().string() << '\t' << StatusName(o.status) << '\t' << o.boxes << '\t'
             << images[i].filename().string() << '\n';
    switch (o.status) {
      case Status::kAnnotated: ++annotated; break;
      case Status::kNoRegions: ++no_regions; break;
      case Status::kFailed:
        ++failed;
        std::cerr << "weedkit: " << images[i].filename().string() << ": " << o.message << '\n';
        break;
    }
  }
  io::WriteFileAtomic(out_dir / "manifest.tsv", manifest.str());
  std::cout << images.size() << " images: " << annotated << " annotated, " << no_regions
            << " skipped (no regions), " << failed << " failed\n";
  return kExitOk;
}

}  // namespace

void AddLabelCommand(CLI::App& app, const GlobalOptions& global, Runner& runner) {
  auto opt = std::make_shared<LabelOptions>();
  auto* cmd = app.add_subcommand("label", "Auto-annotate green plant regions as VOC boxes");
  cmd->add_option("--input", opt->input, "Directory of images")->required();
  cmd->add_option("--output", opt->output, "Directory for image copies, VOC XML and manifest.tsv")
      ->required();
  cmd->add_option("--species", opt->species, "Species code, e.g. ABUTH")->required();
  cmd->add_option("--week", opt->week, "Week number")->required();
  cmd->add_option("--hue-min", opt->mask.hue_min, "Lowest green hue, fraction of a turn")
      ->capture_default_str()
      ->envname("WEEDKIT_HUE_MIN");
  cmd->add_option("--hue-max", opt->mask.hue_max, "Highest green hue, fraction of a turn")
      ->capture_default_str()
      ->envname("WEEDKIT_HUE_MAX");
  cmd->add_option("--sat-min", opt->mask.sat_min, "Minimum saturation")
      ->capture_default_str()
      ->envname("WEEDKIT_SAT_MIN");
  cmd->add_option("--kernel", opt->mask.morph_kernel, "Odd side of the square morphology kernel")
      ->capture_default_str()
      ->envname("WEEDKIT_KERNEL");
  cmd->add_option("--connectivity", opt->connectivity, "Pixel adjacency, 4 or 8")
      ->capture_default_str()
      ->check(CLI::IsMember({4, 8}))
      ->envname("WEEDKIT_CONNECTIVITY");
  cmd->add_option("--min-area-frac", opt->mask.min_area_fraction,
                  "Smallest region kept, as a fraction of the image area")
      ->capture_default_str()
      ->envname("WEEDKIT_MIN_AREA_FRAC");
  cmd->add_option("--workers", opt->workers, "Parallel images (default: logical CPUs)")
      ->check(CLI::PositiveNumber)
      ->envname("WEEDKIT_WORKERS");
  cmd->callback([opt, &global, &runner] { runner = [opt, &global] { return RunLabel(*opt, global); }; });
}

}  // namespace weedkit::cli
