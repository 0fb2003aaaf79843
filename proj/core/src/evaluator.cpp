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
#include "weedkit/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "weedkit/error.hpp"
#include "weedkit/losses.hpp"

namespace weedkit::eval {
namespace {

double RoundTo10(double x) { return std::round(x * 1e10) / 1e10; }

std::optional<std::size_t> FindThreshold(const std::vector<double>& ladder, double t) {
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (std::fabs(ladder[i] - t) < 1e-9) return i;
  }
  return std::nullopt;
}

std::optional<double> Mean(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  int n = 0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

// One class's detections, bucketed per image.
struct ClassDetections {
  struct Entry {
    std::size_t image = 0;
    std::size_t input_index = 0;
    ScoredBox scored;
  };
  std::vector<Entry> entries;
};

ClassResult EvaluateClass(const ClassLabel& label,
                          const std::unordered_map<std::size_t, std::vector<BoundingBox>>& gts,
                          const ClassDetections& dets, const EvalConfig& config) {
  ClassResult result;
  result.label = label;
  for (const auto& [image, boxes] : gts) result.num_gt += static_cast<int>(boxes.size());

  // Per-image rank order: score descending, input order on ties, then cap.
  std::map<std::size_t, std::vector<const ClassDetections::Entry*>> per_image;
  for (const auto& e : dets.entries) per_image[e.image].push_back(&e);
  std::vector<const ClassDetections::Entry*> kept;
  for (auto& [image, list] : per_image) {
    std::stable_sort(list.begin(), list.end(), [](const auto* a, const auto* b) {
      return a->scored.score > b->scored.score;
    });
    if (list.size() > static_cast<std::size_t>(config.max_detections_per_image)) {
      list.resize(static_cast<std::size_t>(config.max_detections_per_image));
    }
    kept.insert(kept.end(), list.begin(), list.end());
  }
  result.num_det = static_cast<int>(kept.size());
  if (result.num_gt == 0) return result;

  std::sort(kept.begin(), kept.end(), [](const auto* a, const auto* b) {
    if (a->scored.score != b->scored.score) return a->scored.score > b->scored.score;
    return a->input_index < b->input_index;
  });
  std::unordered_map<const ClassDetections::Entry*, std::size_t> rank;
  for (std::size_t i = 0; i < kept.size(); ++i) rank[kept[i]] = i;

  static const std::vector<BoundingBox> kNoBoxes;
  std::vector<int> matched_per_threshold;
  std::vector<bool> flags(kept.size());
  std::vector<ScoredBox> ranked;
  for (double threshold : config.iou_thresholds) {
    std::fill(flags.begin(), flags.end(), false);
    int matched = 0;
    for (const auto& [image, list] : per_image) {
      ranked.clear();
      for (const auto* e : list) ranked.push_back(e->scored);
      const auto it = gts.find(image);
      const auto& image_gts = it == gts.end() ? kNoBoxes : it->second;
      const auto outcome = MatchDetections(ranked, image_gts, threshold);
      matched += outcome.tp;
      for (std::size_t k = 0; k < list.size(); ++k) flags[rank[list[k]]] = outcome.is_tp(k);
    }
    matched_per_threshold.push_back(matched);
    result.ap_per_threshold.push_back(
        AveragePrecision(PrecisionRecallCurve(flags, result.num_gt), config.ap_mode));
  }

  result.ap = std::accumulate(result.ap_per_threshold.begin(), result.ap_per_threshold.end(), 0.0) /
              static_cast<double>(result.ap_per_threshold.size());
  if (auto i = FindThreshold(config.iou_thresholds, 0.50)) result.ap50 = result.ap_per_threshold[*i];
  if (auto i = FindThreshold(config.iou_thresholds, 0.75)) result.ap75 = result.ap_per_threshold[*i];
  result.ar = AverageRecall(matched_per_threshold, result.num_gt);
  return result;
}

}  // namespace

std::string_view ApModeName(ApMode mode) {
  return mode == ApMode::kExactIntegral ? "exact-integral" : "interpolated-101";
}

ApMode ParseApMode(std::string_view text) {
  if (text == "interpolated-101") return ApMode::kInterpolated101;
  if (text == "exact-integral") return ApMode::kExactIntegral;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown AP mode '" + std::string(text) + "' (interpolated-101 | exact-integral)");
}

std::vector<double> EvalConfig::Ladder(double lo, double hi, double step) {
  if (!(lo > 0.0 && lo <= hi && hi <= 1.0 && step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::kInvalidArgument, "IoU ladder needs 0 < LO <= HI <= 1 and STEP > 0");
  }
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double t = RoundTo10(lo + k * step);
    if (t > hi + 1e-9) break;
    out.push_back(t);
  }
  return out;
}

std::vector<double> EvalConfig::ParseLadder(std::string_view text) {
  double parts[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const auto colon = text.find(':', pos);
    if ((i < 2) != (colon != std::string_view::npos)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "IoU thresholds must look like LO:HI:STEP, got '" + std::string(text) + "'");
    }
    const auto field = text.substr(pos, i < 2 ? colon - pos : text.npos);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), parts[i]);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "bad number '" + std::string(field) + "' in '" +
                                                   std::string(text) + "'");
    }
    pos = colon + 1;
  }
  return Ladder(parts[0], parts[1], parts[2]);
}

void EvalConfig::Validate() const {
  if (iou_thresholds.empty()) throw Error(ErrorCode::kInvalidArgument, "no IoU thresholds");
  for (std::size_t i = 0; i < iou_thresholds.size(); ++i) {
    const double t = iou_thresholds[i];
    if (!(t > 0.0 && t <= 1.0) || (i > 0 && t <= iou_thresholds[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "IoU thresholds must be strictly increasing within (0, 1]");
    }
  }
  if (max_detections_per_image < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max detections per image must be >= 1");
  }
}

MatchOutcome MatchDetections(std::span<const ScoredBox> ranked_detections,
                             std::span<const BoundingBox> ground_truths, double threshold) {
  MatchOutcome out;
  out.det_match.assign(ranked_detections.size(), -1);
  out.gt_matched.assign(ground_truths.size(), false);
  for (std::size_t d = 0; d < ranked_detections.size(); ++d) {
    const RealBox det = ToRealBox(ranked_detections[d].box);
    int best = -1;
    double best_iou = 0.0;
    for (std::size_t g = 0; g < ground_truths.size(); ++g) {
      if (out.gt_matched[g]) continue;
      const double iou = losses::Iou(det, ToRealBox(ground_truths[g]));
      if (iou < threshold) continue;
      if (best < 0 || iou > best_iou) {
        best = static_cast<int>(g);
        best_iou = iou;
      }
    }
    if (best >= 0) {
      out.det_match[d] = best;
      out.gt_matched[static_cast<std::size_t>(best)] = true;
      ++out.tp;
    } else {
      ++out.fp;
    }
  }
  out.fn = static_cast<int>(ground_truths.size()) - out.tp;
  return out;
}

PrCurve PrecisionRecallCurve(const std::vector<bool>& ranked_tp_flags, int n_gt) {
  PrCurve curve;
  curve.recall.reserve(ranked_tp_flags.size());
  curve.precision.reserve(ranked_tp_flags.size());
  int tp = 0;
  int fp = 0;
  for (bool hit : ranked_tp_flags) {
    hit ? ++tp : ++fp;
    curve.precision.push_back(static_cast<double>(tp) / (tp + fp));
    curve.recall.push_back(n_gt > 0 ? static_cast<double>(tp) / n_gt : 0.0);
  }
  return curve;
}

double AveragePrecision(const PrCurve& curve, ApMode mode) {
  const std::size_t n = curve.recall.size();
  if (n == 0) return 0.0;
  // Precision envelope: best precision at this or any higher recall.
  std::vector<double> envelope(curve.precision);
  for (std::size_t i = n - 1; i > 0; --i) envelope[i - 1] = std::max(envelope[i - 1], envelope[i]);

  if (mode == ApMode::kExactIntegral) {
    double ap = 0.0;
    double prev_recall = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ap += (curve.recall[i] - prev_recall) * envelope[i];
      prev_recall = curve.recall[i];
    }
    return ap;
  }

  double sum = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double r = k / 100.0;
    const auto it = std::lower_bound(curve.recall.begin(), curve.recall.end(), r);
    if (it != curve.recall.end()) sum += envelope[static_cast<std::size_t>(it - curve.recall.begin())];
  }
  return sum / 101.0;
}

std::optional<double> AverageRecall(std::span<const int> matched_per_threshold, int n_gt) {
  if (n_gt <= 0 || matched_per_threshold.empty()) return std::nullopt;
  double sum = 0.0;
  for (int m : matched_per_threshold) sum += static_cast<double>(m) / n_gt;
  return sum / static_cast<double>(matched_per_threshold.size());
}

double MeanAp(std::span<const std::optional<double>> per_class) {
  const auto mean = Mean(std::vector<std::optional<double>>(per_class.begin(), per_class.end()));
  if (!mean) throw Error(ErrorCode::kAllClassesEmpty, "no class has ground-truth instances");
  return *mean;
}

void EvalReport::Summarize() {
  std::vector<std::optional<double>> ap, ap50, ap75, ar;
  summary = Summary{};
  for (const auto& c : classes) {
    ap.push_back(c.ap);
    ap50.push_back(c.ap50);
    ap75.push_back(c.ap75);
    ar.push_back(c.ar);
    if (c.ap) ++summary.classes_evaluated;
  }
  summary.map = Mean(ap);
  summary.map50 = Mean(ap50);
  summary.map75 = Mean(ap75);
  summary.mar = Mean(ar);
}

EvalReport Evaluate(std::span<const Annotation> ground_truth, std::span<const Detection> detections,
                    const Taxonomy& taxonomy, const EvalConfig& config, int workers) {
  config.Validate();
  const std::size_t num_classes = taxonomy.num_classes();

  std::unordered_map<std::string, std::size_t> image_slot;
  for (const auto& ann : ground_truth) {
    if (!image_slot.emplace(ann.image_id, image_slot.size()).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate ground-truth image '" + ann.image_id + "'");
    }
  }
  auto class_of = [&](const ClassLabel& label, const std::string& where) {
    const auto id = taxonomy.ClassId(label);
    if (!id) {
      throw Error(ErrorCode::kInvalidArgument,
                  "label " + label.ToString() + " in " + where + " is not in the taxonomy");
    }
    return static_cast<std::size_t>(*id);
  };

  std::vector<std::unordered_map<std::size_t, std::vector<BoundingBox>>> gts(num_classes);
  for (const auto& ann : ground_truth) {
    const std::size_t slot = image_slot.at(ann.image_id);
    for (const auto& obj : ann.objects) gts[class_of(obj.label, ann.image_id)][slot].push_back(obj.box);
  }

  std::vector<ClassDetections> dets(num_classes);
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const auto& d = detections[i];
    // Unknown images get fresh slots with no ground truth.
    const std::size_t slot = image_slot.emplace(d.image_id, image_slot.size()).first->second;
    dets[class_of(d.label, "detection " + std::to_string(i))].entries.push_back(
        {slot, i, ScoredBox{d.box, d.score}});
  }

  EvalReport report;
  report.config = config;
  report.classes.resize(num_classes);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c = next++; c < num_classes; c = next++) {
      report.classes[c] = EvaluateClass(taxonomy.Label(static_cast<int>(c)), gts[c], dets[c], config);
    }
  };
  const int threads = std::clamp(workers, 1, 64);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  report.Summarize();
  return report;
}

std::vector<SpeciesRollup> RollupBySpecies(const EvalReport& report, const Taxonomy& taxonomy) {
  std::vector<SpeciesRollup> out;
  for (const auto& species : taxonomy.species()) {
    std::vector<std::optional<double>> ap, ap50, ap75, ar;
    for (const auto& c : report.classes) {
      if (c.label.code != species.code) continue;
      ap.push_back(c.ap);
      ap50.push_back(c.ap50);
      ap75.push_back(c.ap75);
      ar.push_back(c.ar);
    }
    SpeciesRollup r{species.code, Mean(ap), Mean(ap50), Mean(ap75), Mean(ar), 0};
    r.classes = static_cast<int>(std::count_if(ap.begin(), ap.end(), [](const auto& v) { return v.has_value(); }));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace weedkit::eval
