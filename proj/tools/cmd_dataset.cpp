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
// split, stats and validate.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "weedkit/dataset.hpp"
#include "weedkit/image_io.hpp"

namespace weedkit::cli {
namespace {

namespace fs = std::filesystem;

io::DatasetIndex LoadIndexFile(const std::string& path, const Taxonomy& taxonomy) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read index " + path);
  return io::ReadIndex(in, taxonomy);
}

io::DatasetIndex LoadIndexDir(const std::string& dir, const Taxonomy& taxonomy) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIoError, "not a readable directory: " + dir);
  return io::IndexFromDirectory(dir, taxonomy);
}

struct SplitOptions {
  std::string index;
  std::vector<double> ratios = {0.8, 0.1, 0.1};
  std::uint64_t seed = 0;
  std::string out;
  bool stratified = false;
};

int RunSplit(const SplitOptions& opt, const GlobalOptions& global) {
  if (opt.ratios.size() != 3) {
    return ReportError(kExitUsage, "--ratios needs exactly three values (train,val,test)");
  }
  const io::SplitRatios ratios{opt.ratios[0], opt.ratios[1], opt.ratios[2]};
  ratios.Validate();
  const Taxonomy taxonomy = global.LoadTaxonomy();
  const auto index = LoadIndexFile(opt.index, taxonomy);
  const auto split = io::SplitDataset(index, ratios, opt.seed,
                                      opt.stratified ? io::SplitMode::kStratified
                                                     : io::SplitMode::kUniform);
  io::WriteSplit(opt.out, split);
  std::cout << index.size() << " images: train " << split.train.size() << ", val "
            << split.val.size() << ", test " << split.test.size() << '\n';
  return kExitOk;
}

struct StatsOptions {
  std::string dir;
  std::string index;
};

int RunStats(const StatsOptions& opt, const GlobalOptions& global) {
  const Taxonomy taxonomy = global.LoadTaxonomy();
  const auto index = opt.dir.empty() ? LoadIndexFile(opt.index, taxonomy)
                                     : LoadIndexDir(opt.dir, taxonomy);
  std::cout << io::FormatStats(io::ComputeStats(index, taxonomy));
  return kExitOk;
}

int RunValidate(const std::string& dir, const GlobalOptions& global) {
  const Taxonomy taxonomy = global.LoadTaxonomy();
  if (!fs::is_directory(dir)) return ReportError(kExitIo, "not a readable directory: " + dir);
  const auto report = io::ValidateDataset(dir, taxonomy, imageio::ProbeSize);
  std::cout << report.Format();
  return report.ok() ? kExitOk : kExitFindings;
}

}  // namespace

void AddSplitCommand(CLI::App& app, const GlobalOptions& global, Runner& runner) {
  auto opt = std::make_shared<SplitOptions>();
  auto* cmd = app.add_subcommand("split", "Seeded train/val/test split of an index file");
  cmd->add_option("--index", opt->index, "Index file: one image id per line, optional labels")
      ->required();
  cmd->add_option("--ratios", opt->ratios, "train,val,test fractions summing to 1")
      ->delimiter(',')
      ->expected(3)
      ->capture_default_str()
      ->envname("WEEDKIT_SPLIT_RATIOS");
  cmd->add_option("--seed", opt->seed, "Shuffle seed (unsigned 64-bit)")
      ->capture_default_str()
      ->envname("WEEDKIT_SEED");
  cmd->add_option("--out", opt->out, "Output directory")->required();
  cmd->add_flag("--stratified", opt->stratified, "Split within groups sharing the first label");
  cmd->callback([opt, &global, &runner] { runner = [opt, &global] { return RunSplit(*opt, global); }; });
}

void AddStatsCommand(CLI::App& app, const GlobalOptions& global, Runner& runner) {
  auto opt = std::make_shared<StatsOptions>();
  auto* cmd = app.add_subcommand("stats", "Frames per species and week");
  auto* source = cmd->add_option_group("source", "Dataset to count");
  source->add_option("--dir", opt->dir, "Directory of VOC XML files");
  source->add_option("--index", opt->index, "Index file");
  source->require_option(1);
  cmd->callback([opt, &global, &runner] { runner = [opt, &global] { return RunStats(*opt, global); }; });
}

void AddValidateCommand(CLI::App& app, const GlobalOptions& global, Runner& runner) {
  auto dir = std::make_shared<std::string>();
  auto* cmd = app.add_subcommand("validate", "Check annotations against images and the taxonomy");
  cmd->add_option("--dir", *dir, "Dataset directory")->required();
  cmd->callback([dir, &global, &runner] { runner = [dir, &global] { return RunValidate(*dir, global); }; });
}

}  // namespace weedkit::cli
