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
// Value-level reference implementations of the detector losses and the
// prediction/ground-truth assignment used by set-prediction training.
// No gradients.
#ifndef WEEDKIT_LOSSES_HPP_
#define WEEDKIT_LOSSES_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "weedkit/geometry.hpp"

namespace weedkit::losses {

/// Weights of the composite set-prediction loss
///   L = alpha_cls * L_cls + beta_bbox * L_bbox + gamma_iou * L_iou.
/// The same weights scale the terms of the matching cost.
struct LossWeights {
  double alpha_cls = 1.0;
  double beta_bbox = 5.0;
  double gamma_iou = 2.0;

  void Validate() const;  // finite and non-negative, else kInvalidArgument
};

struct FocalParams {
  double alpha_t = 0.25;
  double gamma = 2.0;

  void Validate() const;  // alpha_t in [0,1], gamma >= 0
};

/// Cross-entropy floor: probabilities are clamped to this before the log so
/// matching costs stay finite.
inline constexpr double kProbabilityFloor = 1e-12;

/// Intersection over union; 0 when the union is empty.
double Iou(const RealBox& a, const RealBox& b);

/// IoU minus the fraction of the enclosing box not covered by the union.
/// In (-1, 1]; equals IoU when the enclosing box is empty.
double Giou(const RealBox& a, const RealBox& b);

/// Sum of absolute coordinate differences.
double L1BoxLoss(const RealBox& a, const RealBox& b);

/// -log(max(p[target], kProbabilityFloor)). Throws kDegenerateDistribution
/// when p has negative or non-finite entries or does not sum to 1 within
/// 1e-9, kInvalidArgument when target is out of range.
double CrossEntropy(std::span<const double> probabilities, std::size_t target);

/// -alpha_t * (1 - p_t)^gamma * log(p_t). Throws kDomainError unless
/// 0 < p_t <= 1.
double FocalLoss(double p_t, const FocalParams& params = {});

double DetrTotalLoss(double l_cls, double l_bbox, double l_iou, const LossWeights& weights = {});

struct PredictedBox {
  std::vector<double> class_probabilities;
  RealBox box;
};

struct TargetBox {
  std::size_t class_index = 0;
  RealBox box;
};

/// alpha_cls * CE(p, gt class) + beta_bbox * L1 + gamma_iou * (1 - GIoU).
double MatchCost(const PredictedBox& prediction, const TargetBox& target,
                 const LossWeights& weights = {});

class CostMatrix {
 public:
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}
  /// Row-major initializer; every row must have the same length.
  CostMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> cells_;
};

/// Cost of pairing every prediction (row) with every target (column).
CostMatrix BuildCostMatrix(std::span<const PredictedBox> predictions,
                           std::span<const TargetBox> targets, const LossWeights& weights = {});

struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (row, col), ascending row
  double total_cost = 0.0;
};

/// Minimum-cost one-to-one assignment of size min(rows, cols). Among optimal
/// assignments the lexicographically smallest pair list is returned.
/// Throws kEmptyMatrix for a 0-sized matrix, kInvalidArgument for
/// non-finite cells.
Assignment HungarianAssign(const CostMatrix& costs);

}  // namespace weedkit::losses

#endif  // WEEDKIT_LOSSES_HPP_
