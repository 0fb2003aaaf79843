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
#ifndef WEEDKIT_TOOLS_COMMANDS_HPP_
#define WEEDKIT_TOOLS_COMMANDS_HPP_

#include <functional>
#include <string>

#include <CLI11.hpp>

#include "weedkit/error.hpp"
#include "weedkit/taxonomy.hpp"

namespace weedkit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFindings = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

struct GlobalOptions {
  std::string taxonomy_path;  // empty: built-in table

  Taxonomy LoadTaxonomy() const;
};

/// Set by a subcommand's callback; main() returns it.
using Runner = std::function<int()>;

void AddLabelCommand(CLI::App& app, const GlobalOptions& global, Runner& runner);
void AddSplitCommand(CLI::App& app, const GlobalOptions& global, Runner& runner);
void AddStatsCommand(CLI::App& app, const GlobalOptions& global, Runner& runner);
void AddValidateCommand(CLI::App& app, const GlobalOptions& global, Runner& runner);
void AddEvalCommand(CLI::App& app, const GlobalOptions& global, Runner& runner);
void AddServeCommand(CLI::App& app, const GlobalOptions& global, Runner& runner);

/// Prints "weedkit: <message>" to stderr and returns the exit code for the
/// error: usage-type codes map to 2, I/O to 3, everything else to 1.
int ReportError(const Error& error);
int ReportError(ExitCode code, const std::string& message);

}  // namespace weedkit::cli

#endif  // WEEDKIT_TOOLS_COMMANDS_HPP_
