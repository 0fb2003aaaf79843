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
#include "weedkit/report.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "weedkit/error.hpp"

namespace weedkit::eval {
namespace {

using nlohmann::ordered_json;

std::string Cell(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

std::string Row(std::string_view name, std::initializer_list<std::string> cells) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-16.*s", static_cast<int>(name.size()), name.data());
  std::string out = buf;
  for (const auto& c : cells) {
    std::snprintf(buf, sizeof buf, " %10s", c.c_str());
    out += buf;
  }
  out += '\n';
  return out;
}

ordered_json Value(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<double> OptionalValue(const ordered_json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  const double v = j.at(key).get<double>();
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::kMalformedRecord, std::string("value of '") + key + "' outside [0, 1]");
  }
  return v;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == s.npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string FormatTextReport(const EvalReport& report, const std::vector<SpeciesRollup>& rollups) {
  std::ostringstream out;
  const auto& cfg = report.config;
  out << "ap_mode " << ApModeName(cfg.ap_mode) << ", " << cfg.iou_thresholds.size()
      << " IoU thresholds, max " << cfg.max_detections_per_image << " detections per image\n\n";
  out << Row("class", {"n_gt", "n_det", "AP", "AP50", "AP75", "AR"});
  for (const auto& c : report.classes) {
    if (c.num_gt == 0 && c.num_det == 0 && !c.ap) continue;
    out << Row(c.label.ToString(), {std::to_string(c.num_gt), std::to_string(c.num_det), Cell(c.ap),
                                    Cell(c.ap50), Cell(c.ap75), Cell(c.ar)});
  }
  if (!rollups.empty()) {
    out << '\n' << Row("species", {"classes", "mAP", "mAP50", "mAP75", "AR"});
    for (const auto& r : rollups) {
      out << Row(r.code, {std::to_string(r.classes), Cell(r.map), Cell(r.map50), Cell(r.map75),
                          Cell(r.ar)});
    }
  }
  const auto& s = report.summary;
  out << "\nclasses evaluated " << s.classes_evaluated << '\n'
      << "mAP    " << Cell(s.map) << '\n'
      << "mAP50  " << Cell(s.map50) << '\n'
      << "mAP75  " << Cell(s.map75) << '\n'
      << "mAR    " << Cell(s.mar) << '\n';
  return out.str();
}

std::string FormatJsonReport(const EvalReport& report, const std::vector<SpeciesRollup>& rollups) {
  ordered_json doc;
  doc["config"] = {{"iou_thresholds", report.config.iou_thresholds},
                   {"max_detections_per_image", report.config.max_detections_per_image},
                   {"ap_mode", ApModeName(report.config.ap_mode)}};
  const auto& s = report.summary;
  doc["summary"] = {{"mAP", Value(s.map)},
                    {"mAP_50", Value(s.map50)},
                    {"mAP_75", Value(s.map75)},
                    {"mAR", Value(s.mar)},
                    {"classes_evaluated", s.classes_evaluated}};
  auto& classes = doc["classes"] = ordered_json::array();
  for (const auto& c : report.classes) {
    classes.push_back({{"label", c.label.ToString()},
                       {"num_gt", c.num_gt},
                       {"num_det", c.num_det},
                       {"AP", Value(c.ap)},
                       {"AP_50", Value(c.ap50)},
                       {"AP_75", Value(c.ap75)},
                       {"AR", Value(c.ar)},
                       {"AP_per_threshold", c.ap_per_threshold}});
  }
  if (!rollups.empty()) {
    auto& species = doc["species"] = ordered_json::array();
    for (const auto& r : rollups) {
      species.push_back({{"code", r.code},
                         {"classes", r.classes},
                         {"mAP", Value(r.map)},
                         {"mAP_50", Value(r.map50)},
                         {"mAP_75", Value(r.map75)},
                         {"AR", Value(r.ar)}});
    }
  }
  return doc.dump(2) + "\n";
}

EvalReport ParseJsonReport(std::string_view text, const Taxonomy& taxonomy) {
  try {
    const auto doc = ordered_json::parse(text);
    EvalReport report;
    const auto& cfg = doc.at("config");
    report.config.iou_thresholds = cfg.at("iou_thresholds").get<std::vector<double>>();
    report.config.max_detections_per_image = cfg.at("max_detections_per_image").get<int>();
    report.config.ap_mode = ParseApMode(cfg.at("ap_mode").get<std::string>());
    report.config.Validate();
    for (const auto& j : doc.at("classes")) {
      ClassResult c;
      c.label = taxonomy.ParseLabel(j.at("label").get<std::string>());
      c.num_gt = j.at("num_gt").get<int>();
      c.num_det = j.at("num_det").get<int>();
      c.ap = OptionalValue(j, "AP");
      c.ap50 = OptionalValue(j, "AP_50");
      c.ap75 = OptionalValue(j, "AP_75");
      c.ar = OptionalValue(j, "AR");
      c.ap_per_threshold = j.at("AP_per_threshold").get<std::vector<double>>();
      report.classes.push_back(std::move(c));
    }
    report.Summarize();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("report JSON: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("report JSON: ") + e.what());
  }
}

EvalReport ReadClassTable(std::istream& in, const Taxonomy& taxonomy) {
  EvalReport report;
  report.classes.resize(taxonomy.num_classes());
  for (std::size_t i = 0; i < report.classes.size(); ++i) {
    report.classes[i].label = taxonomy.Label(static_cast<int>(i));
  }
  std::vector<bool> seen(report.classes.size(), false);
  std::string line;
  int line_no = 0;
  bool header_done = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(trimmed);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(Trim(cell));
    if (trimmed.back() == ',') cells.emplace_back();
    const std::string where = "class table line " + std::to_string(line_no) + ": ";
    if (!header_done) {
      header_done = true;
      if (cells.size() != 5 || cells[0] != "label") {
        throw Error(ErrorCode::kMalformedRecord,
                    where + "expected header 'label,mAP,mAP_50,mAP_75,recall'");
      }
      continue;
    }
    if (cells.size() != 5) throw Error(ErrorCode::kMalformedRecord, where + "expected 5 columns");
    ClassLabel label;
    try {
      label = taxonomy.ParseLabel(cells[0]);
    } catch (const Error& e) {
      throw Error(ErrorCode::kUnknownLabel, where + e.what());
    }
    const auto id = static_cast<std::size_t>(*taxonomy.ClassId(label));
    if (seen[id]) throw Error(ErrorCode::kMalformedRecord, where + "duplicate " + label.ToString());
    seen[id] = true;
    std::optional<double> values[4];
    for (int k = 0; k < 4; ++k) {
      const auto& cell = cells[static_cast<std::size_t>(k) + 1];
      if (cell.empty()) continue;
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size() || !(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::kMalformedRecord, where + "bad value '" + cell + "'");
      }
      values[k] = v;
    }
    auto& c = report.classes[id];
    c.ap = values[0];
    c.ap50 = values[1];
    c.ap75 = values[2];
    c.ar = values[3];
  }
  report.Summarize();
  return report;
}

}  // namespace weedkit::eval
