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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

#include "commands.hpp"
#include "weedkit/file_util.hpp"
#include "weedkit/predictions.hpp"
#include "weedkit/report.hpp"
#include "weedkit/voc.hpp"

namespace weedkit::cli {
namespace {

namespace fs = std::filesystem;

struct EvalOptions {
  std::string gt;
  std::string pred;
  std::string per_class;
  std::string iou_thresholds = "0.5:0.95:0.05";
  int max_dets = 100;
  std::string ap_mode = "interpolated-101";
  std::string rollup;
  std::string report;
  std::string text_report;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
};

std::string Fixed3(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", *v);
  return buf;
}

std::vector<Annotation> LoadGroundTruth(const std::string& dir, const Taxonomy& taxonomy) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIoError, "not a readable directory: " + dir);
  std::vector<Annotation> out;
  for (const auto& path : io::ListFiles(dir)) {
    if (path.extension() == ".xml") out.push_back(io::ReadVocFile(path, taxonomy));
  }
  return out;
}

int RunEval(const EvalOptions& opt, const GlobalOptions& global) {
  // Usage problems first so they never hide behind ingestion errors.
  eval::EvalConfig config;
  config.iou_thresholds = eval::EvalConfig::ParseLadder(opt.iou_thresholds);
  config.max_detections_per_image = opt.max_dets;
  config.ap_mode = eval::ParseApMode(opt.ap_mode);
  config.Validate();
  const bool from_files = !opt.gt.empty() && !opt.pred.empty() && opt.per_class.empty();
  const bool from_table = opt.gt.empty() && opt.pred.empty() && !opt.per_class.empty();
  if (!from_files && !from_table) {
    return ReportError(kExitUsage, "give either --gt and --pred, or --per-class");
  }

  const Taxonomy taxonomy = global.LoadTaxonomy();
  eval::EvalReport report;
  if (from_table) {
    std::ifstream in(opt.per_class);
    if (!in) return ReportError(kExitIo, "cannot read " + opt.per_class);
    report = eval::ReadClassTable(in, taxonomy);
    report.config = config;
  } else {
    const auto gts = LoadGroundTruth(opt.gt, taxonomy);
    std::ifstream in(opt.pred);
    if (!in) return ReportError(kExitIo, "cannot read " + opt.pred);
    const auto dets = io::ReadPredictions(in, taxonomy);
    report = eval::Evaluate(gts, dets, taxonomy, config, opt.workers);
  }
  if (report.summary.classes_evaluated == 0) {
    return ReportError(kExitFindings, "no class has ground-truth instances; nothing to evaluate");
  }

  std::vector<eval::SpeciesRollup> rollups;
  if (opt.rollup == "species") rollups = eval::RollupBySpecies(report, taxonomy);
  if (!opt.report.empty()) io::WriteFileAtomic(opt.report, eval::FormatJsonReport(report, rollups));
  if (!opt.text_report.empty()) {
    io::WriteFileAtomic(opt.text_report, eval::FormatTextReport(report, rollups));
  }

  const auto& s = report.summary;
  std::cout << "classes " << s.classes_evaluated << '\n'
            << "mAP     " << Fixed3(s.map) << '\n'
            << "mAP50   " << Fixed3(s.map50) << '\n'
            << "mAP75   " << Fixed3(s.map75) << '\n'
            << "mAR     " << Fixed3(s.mar) << '\n';
  if (!rollups.empty()) {
    std::cout << "\nspecies   mAP    mAP50  mAP75  AR\n";
    for (const auto& r : rollups) {
      if (r.classes == 0) continue;
      char line[128];
      std::snprintf(line, sizeof line, "%-8s %6s %6s %6s %6s\n", r.code.c_str(), Fixed3(r.map).c_str(),
                    Fixed3(r.map50).c_str(), Fixed3(r.map75).c_str(), Fixed3(r.ar).c_str());
      std::cout << line;
    }
  }
  return kExitOk;
}

}  // namespace

void AddEvalCommand(CLI::App& app, const GlobalOptions& global, Runner& runner) {
  auto opt = std::make_shared<EvalOptions>();
  auto* cmd = app.add_subcommand("eval", "Score predictions against VOC ground truth");
  cmd->add_option("--gt", opt->gt, "Directory of ground-truth VOC XML");
  cmd->add_option("--pred", opt->pred, "Predictions, one JSON object per line");
  cmd->add_option("--per-class", opt->per_class,
                  "CSV of per-class metrics to aggregate instead of evaluating");
  cmd->add_option("--iou-thresholds", opt->iou_thresholds, "IoU ladder LO:HI:STEP, inclusive")
      ->capture_default_str()
      ->envname("WEEDKIT_IOU_THRESHOLDS");
  cmd->add_option("--max-dets", opt->max_dets, "Detections kept per image and class")
      ->capture_default_str()
      ->check(CLI::PositiveNumber)
      ->envname("WEEDKIT_MAX_DETS");
  cmd->add_option("--ap-mode", opt->ap_mode, "interpolated-101 or exact-integral")
      ->capture_default_str()
      ->check(CLI::IsMember({"interpolated-101", "exact-integral"}))
      ->envname("WEEDKIT_AP_MODE");
  cmd->add_option("--rollup", opt->rollup, "Also report per-species means")
      ->check(CLI::IsMember({"species"}));
  cmd->add_option("--report", opt->report, "Write the JSON report here");
  cmd->add_option("--text-report", opt->text_report, "Write the text report here");
  cmd->add_option("--workers", opt->workers, "Parallel classes (default: logical CPUs)")
      ->check(CLI::PositiveNumber)
      ->envname("WEEDKIT_WORKERS");
  cmd->callback([opt, &global, &runner] { runner = [opt, &global] { return RunEval(*opt, global); }; });
}

}  // namespace weedkit::cli
