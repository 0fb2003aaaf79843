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
// Evaluation report serialization: a fixed-width text table for humans and a
// JSON document with the same fields for tools. Missing values (classes with
// no ground truth) print as "-" in text and null in JSON.
#ifndef WEEDKIT_REPORT_HPP_
#define WEEDKIT_REPORT_HPP_

#include <istream>
#include <string>
#include <vector>

#include "weedkit/evaluator.hpp"
#include "weedkit/taxonomy.hpp"

namespace weedkit::eval {

std::string FormatTextReport(const EvalReport& report,
                             const std::vector<SpeciesRollup>& rollups = {});

/// Pretty-printed JSON with keys in a fixed order: config, summary, classes,
/// and species (only when rollups are given). Ends with a newline.
std::string FormatJsonReport(const EvalReport& report,
                             const std::vector<SpeciesRollup>& rollups = {});

/// Inverse of FormatJsonReport for the config, summary and classes sections.
/// Throws kMalformedRecord on schema violations.
EvalReport ParseJsonReport(std::string_view text, const Taxonomy& taxonomy);

/// Reads a per-class metric table in CSV form:
///
///   label,mAP,mAP_50,mAP_75,recall
///   ABUTH_week_1,0.418,0.576,0.356,0.408
///
/// Empty cells are missing values. Classes absent from the table are left
/// without values, and the summary is recomputed. Lets published per-week
/// tables go through the same rollup as computed reports.
EvalReport ReadClassTable(std::istream& in, const Taxonomy& taxonomy);

}  // namespace weedkit::eval

#endif  // WEEDKIT_REPORT_HPP_
