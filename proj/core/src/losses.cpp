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
#include <algorithm>
#include <cmath>
#include <string>

#include "weedkit/error.hpp"
#include "weedkit/losses.hpp"

namespace weedkit::losses {

void LossWeights::Validate() const {
  for (double w : {alpha_cls, beta_bbox, gamma_iou}) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "loss weights must be finite and non-negative");
    }
  }
}

void FocalParams::Validate() const {
  if (!(alpha_t >= 0.0 && alpha_t <= 1.0) || !(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "focal params need alpha_t in [0,1] and gamma >= 0");
  }
}

double Iou(const RealBox& a, const RealBox& b) {
  const double iw = std::max(0.0, std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin));
  const double ih = std::max(0.0, std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin));
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

double Giou(const RealBox& a, const RealBox& b) {
  const double iw = std::max(0.0, std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin));
  const double ih = std::max(0.0, std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin));
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  const double iou = uni > 0.0 ? inter / uni : 0.0;
  const double hull = (std::max(a.xmax, b.xmax) - std::min(a.xmin, b.xmin)) *
                      (std::max(a.ymax, b.ymax) - std::min(a.ymin, b.ymin));
  if (hull <= 0.0) return iou;
  // hull >= uni mathematically; rounding can put it an ulp below.
  return iou - std::max(0.0, hull - uni) / hull;
}

double L1BoxLoss(const RealBox& a, const RealBox& b) {
  return std::fabs(a.xmin - b.xmin) + std::fabs(a.ymin - b.ymin) + std::fabs(a.xmax - b.xmax) +
         std::fabs(a.ymax - b.ymax);
}

double CrossEntropy(std::span<const double> probabilities, std::size_t target) {
  if (target >= probabilities.size()) {
    throw Error(ErrorCode::kInvalidArgument, "target class " + std::to_string(target) +
                                                 " out of range for " +
                                                 std::to_string(probabilities.size()) + " classes");
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorCode::kDegenerateDistribution, "probabilities must be finite and >= 0");
    }
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::kDegenerateDistribution,
                "probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  return -std::log(std::max(probabilities[target], kProbabilityFloor));
}

double FocalLoss(double p_t, const FocalParams& params) {
  params.Validate();
  if (!(p_t > 0.0 && p_t <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "focal loss needs 0 < p_t <= 1, got " + std::to_string(p_t));
  }
  return -params.alpha_t * std::pow(1.0 - p_t, params.gamma) * std::log(p_t);
}

double DetrTotalLoss(double l_cls, double l_bbox, double l_iou, const LossWeights& weights) {
  weights.Validate();
  if (!std::isfinite(l_cls) || !std::isfinite(l_bbox) || !std::isfinite(l_iou)) {
    throw Error(ErrorCode::kInvalidArgument, "loss components must be finite");
  }
  return weights.alpha_cls * l_cls + weights.beta_bbox * l_bbox + weights.gamma_iou * l_iou;
}

double MatchCost(const PredictedBox& prediction, const TargetBox& target,
                 const LossWeights& weights) {
  weights.Validate();
  return weights.alpha_cls * CrossEntropy(prediction.class_probabilities, target.class_index) +
         weights.beta_bbox * L1BoxLoss(prediction.box, target.box) +
         weights.gamma_iou * (1.0 - Giou(prediction.box, target.box));
}

CostMatrix BuildCostMatrix(std::span<const PredictedBox> predictions,
                           std::span<const TargetBox> targets, const LossWeights& weights) {
  CostMatrix m(predictions.size(), targets.size());
  for (std::size_t r = 0; r < predictions.size(); ++r) {
    for (std::size_t c = 0; c < targets.size(); ++c) {
      m(r, c) = MatchCost(predictions[r], targets[c], weights);
    }
  }
  return m;
}

CostMatrix::CostMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  cells_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::kInvalidArgument, "ragged cost matrix");
    cells_.insert(cells_.end(), row.begin(), row.end());
  }
}

}  // namespace weedkit::losses
