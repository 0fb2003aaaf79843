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
// weedkit: auto-annotation, dataset split/stats/validation, evaluation and
// the annotation review server.
#include <iostream>

#include "commands.hpp"

namespace weedkit::cli {

Taxonomy GlobalOptions::LoadTaxonomy() const {
  return taxonomy_path.empty() ? Taxonomy::Default() : Taxonomy::Load(taxonomy_path);
}

int ReportError(ExitCode code, const std::string& message) {
  std::cerr << "weedkit: " << message << '\n';
  return code;
}

int ReportError(const Error& error) {
  switch (error.code()) {
    case ErrorCode::kIoError:
      return ReportError(kExitIo, error.what());
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kMalformedLabel:
    case ErrorCode::kUnknownSpecies:
    case ErrorCode::kInactiveWeek:
      return ReportError(kExitUsage, error.what());
    default:
      return ReportError(kExitFindings, error.what());
  }
}

}  // namespace weedkit::cli

int main(int argc, char** argv) {
  using namespace weedkit::cli;

  CLI::App app{"Weed dataset tooling: auto-annotation, splits, statistics, validation, "
               "evaluation and annotation review.",
               "weedkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "weedkit 0.1.0");

  GlobalOptions global;
  app.add_option("--taxonomy", global.taxonomy_path,
                 "Taxonomy file (default: the built-in 16-species table)")
      ->envname("WEEDKIT_TAXONOMY")
      ->check(CLI::ExistingFile);

  Runner runner;
  AddLabelCommand(app, global, runner);
  AddSplitCommand(app, global, runner);
  AddStatsCommand(app, global, runner);
  AddValidateCommand(app, global, runner);
  AddEvalCommand(app, global, runner);
  AddServeCommand(app, global, runner);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return runner ? runner() : kExitUsage;
  } catch (const weedkit::Error& e) {
    return ReportError(e);
  } catch (const std::exception& e) {
    return ReportError(kExitFindings, e.what());
  }
}
