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
#ifndef WEEDKIT_PREDICTIONS_HPP_
#define WEEDKIT_PREDICTIONS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "weedkit/annotation.hpp"
#include "weedkit/taxonomy.hpp"

namespace weedkit::io {

// One JSON object per line:
//   {"image_id":"img_001","label":"ABUTH_week_2","xmin":10,"ymin":12,
//    "xmax":90,"ymax":140,"score":0.986}
// Coordinates are 0-based inclusive pixels and must be integral.
// Blank lines are skipped; errors name the 1-based line number.
// Throws kMalformedRecord, kUnknownLabel or kScoreOutOfRange.
std::vector<Detection> ReadPredictions(std::istream& in, const Taxonomy& taxonomy);

std::string FormatPrediction(const Detection& detection);

}  // namespace weedkit::io

#endif  // WEEDKIT_PREDICTIONS_HPP_
