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
// Detection evaluation: greedy score-ordered matching per image and class,
// precision/recall curves, AP over an IoU ladder, AR under a per-image
// detection cap, and class/species means.
//
// Classes without ground truth have no AP/AR (std::nullopt) and are left out
// of every mean.
#ifndef WEEDKIT_EVALUATOR_HPP_
#define WEEDKIT_EVALUATOR_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weedkit/annotation.hpp"
#include "weedkit/geometry.hpp"
#include "weedkit/taxonomy.hpp"

namespace weedkit::eval {

enum class ApMode {
  kInterpolated101,  // mean envelope precision at recall 0.00, 0.01, ..., 1.00
  kExactIntegral,    // area under the precision envelope
};

std::string_view ApModeName(ApMode mode);
ApMode ParseApMode(std::string_view text);  // "interpolated-101" | "exact-integral"

struct EvalConfig {
  std::vector<double> iou_thresholds = Ladder(0.50, 0.95, 0.05);
  int max_detections_per_image = 100;
  ApMode ap_mode = ApMode::kInterpolated101;

  /// Thresholds lo, lo+step, ... up to hi inclusive, each rounded to 10
  /// decimals. Throws kInvalidArgument for an empty or out-of-range ladder.
  static std::vector<double> Ladder(double lo, double hi, double step);
  /// Parses "LO:HI:STEP".
  static std::vector<double> ParseLadder(std::string_view text);

  void Validate() const;
};

struct ScoredBox {
  BoundingBox box;
  double score = 0.0;
};

struct MatchOutcome {
  std::vector<int> det_match;  // gt index per detection, -1 for a false positive
  std::vector<bool> gt_matched;
  int tp = 0;
  int fp = 0;
  int fn = 0;

  bool is_tp(std::size_t det) const { return det_match[det] >= 0; }
};

/// Detections must already be in rank order (descending score, ties by input
/// order) and capped. Each one in turn takes the still-unmatched ground truth
/// with the highest IoU >= threshold (lowest index on IoU ties).
MatchOutcome MatchDetections(std::span<const ScoredBox> ranked_detections,
                             std::span<const BoundingBox> ground_truths, double threshold);

struct PrCurve {
  std::vector<double> recall;
  std::vector<double> precision;

  bool empty() const { return recall.empty(); }
};

/// Cumulative precision/recall after each ranked detection. An empty curve
/// when there are no detections; recall is 0 throughout when n_gt == 0.
PrCurve PrecisionRecallCurve(const std::vector<bool>& ranked_tp_flags, int n_gt);

double AveragePrecision(const PrCurve& curve, ApMode mode);

/// Mean over thresholds of matched / n_gt. nullopt when n_gt == 0.
std::optional<double> AverageRecall(std::span<const int> matched_per_threshold, int n_gt);

/// Mean over classes with a value. Throws kAllClassesEmpty when none has one.
double MeanAp(std::span<const std::optional<double>> per_class);

struct ClassResult {
  ClassLabel label;
  int num_gt = 0;
  int num_det = 0;  // after the per-image cap
  std::optional<double> ap;     // mean over the ladder
  std::optional<double> ap50;   // present when 0.50 is on the ladder
  std::optional<double> ap75;   // present when 0.75 is on the ladder
  std::optional<double> ar;
  std::vector<double> ap_per_threshold;  // empty for classes without ground truth
};

struct Summary {
  std::optional<double> map;
  std::optional<double> map50;
  std::optional<double> map75;
  std::optional<double> mar;
  int classes_evaluated = 0;
};

struct EvalReport {
  EvalConfig config;
  std::vector<ClassResult> classes;  // taxonomy order
  Summary summary;

  /// Recomputes `summary` from `classes`.
  void Summarize();
};

/// Full evaluation. Detections on images absent from `ground_truth` count as
/// false positives. Per-class work runs on up to `workers` threads; the
/// result does not depend on the worker count. Throws kInvalidArgument for
/// duplicate ground-truth image ids or labels outside the taxonomy.
EvalReport Evaluate(std::span<const Annotation> ground_truth, std::span<const Detection> detections,
                    const Taxonomy& taxonomy, const EvalConfig& config = {}, int workers = 1);

struct SpeciesRollup {
  std::string code;
  std::optional<double> map;
  std::optional<double> map50;
  std::optional<double> map75;
  std::optional<double> ar;
  int classes = 0;  // week classes that contributed an AP
};

/// Unweighted mean of each metric over a species' week classes.
std::vector<SpeciesRollup> RollupBySpecies(const EvalReport& report, const Taxonomy& taxonomy);

}  // namespace weedkit::eval

#endif  // WEEDKIT_EVALUATOR_HPP_
