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
#include "weedkit/predictions.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <nlohmann/json.hpp>

#include "weedkit/error.hpp"

namespace weedkit::io {
namespace {

using nlohmann::json;

std::string AtLine(std::size_t line_no) { return "predictions line " + std::to_string(line_no) + ": "; }

int Coordinate(const json& record, const char* key, std::size_t line_no) {
  const auto it = record.find(key);
  if (it == record.end() || !it->is_number()) {
    throw Error(ErrorCode::kMalformedRecord,
                AtLine(line_no) + "field '" + key + "' missing or not a number");
  }
  const double v = it->get<double>();
  if (!std::isfinite(v) || v != std::floor(v) || v < 0 || v > std::numeric_limits<int>::max()) {
    throw Error(ErrorCode::kMalformedRecord,
                AtLine(line_no) + "field '" + key + "' must be a non-negative integer");
  }
  return static_cast<int>(v);
}

}  // namespace

std::vector<Detection> ReadPredictions(std::istream& in, const Taxonomy& taxonomy) {
  std::vector<Detection> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kMalformedRecord, AtLine(line_no) + "invalid JSON (" + e.what() + ")");
    }
    if (!record.is_object()) {
      throw Error(ErrorCode::kMalformedRecord, AtLine(line_no) + "expected a JSON object");
    }
    for (const char* key : {"image_id", "label"}) {
      if (!record.contains(key) || !record[key].is_string()) {
        throw Error(ErrorCode::kMalformedRecord,
                    AtLine(line_no) + "field '" + key + "' missing or not a string");
      }
    }
    if (!record.contains("score") || !record["score"].is_number()) {
      throw Error(ErrorCode::kMalformedRecord, AtLine(line_no) + "field 'score' missing or not a number");
    }

    Detection det;
    det.image_id = record["image_id"].get<std::string>();
    try {
      det.label = taxonomy.ParseLabel(record["label"].get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::kUnknownLabel, AtLine(line_no) + e.what());
    }
    det.box = BoundingBox{Coordinate(record, "xmin", line_no), Coordinate(record, "ymin", line_no),
                          Coordinate(record, "xmax", line_no), Coordinate(record, "ymax", line_no)};
    if (!det.box.valid()) {
      throw Error(ErrorCode::kMalformedRecord, AtLine(line_no) + "box has xmax < xmin or ymax < ymin");
    }
    det.score = record["score"].get<double>();
    if (!(det.score >= 0.0 && det.score <= 1.0)) {
      throw Error(ErrorCode::kScoreOutOfRange,
                  AtLine(line_no) + "score " + record["score"].dump() + " is outside [0, 1]");
    }
    out.push_back(std::move(det));
  }
  return out;
}

std::string FormatPrediction(const Detection& d) {
  // ordered_json keeps the documented field order.
  nlohmann::ordered_json j;
  j["image_id"] = d.image_id;
  j["label"] = d.label.ToString();
  j["xmin"] = d.box.xmin;
  j["ymin"] = d.box.ymin;
  j["xmax"] = d.box.xmax;
  j["ymax"] = d.box.ymax;
  j["score"] = d.score;
  return j.dump();
}

}  // namespace weedkit::io
