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
#ifndef WEEDKIT_ANNOTATION_HPP_
#define WEEDKIT_ANNOTATION_HPP_

#include <string>
#include <vector>

#include "weedkit/geometry.hpp"
#include "weedkit/taxonomy.hpp"

namespace weedkit {

struct AnnotatedObject {
  ClassLabel label;
  BoundingBox box;  // 0-based inclusive
  std::string pose = "Unspecified";
  int truncated = 0;
  int difficult = 0;

  friend bool operator==(const AnnotatedObject&, const AnnotatedObject&) = default;
};

/// Ground truth for one image. image_id is the stem of filename.
struct Annotation {
  std::string image_id;
  std::string folder;
  std::string filename;
  int width = 0;
  int height = 0;
  int depth = 3;
  std::vector<AnnotatedObject> objects;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

/// A scored prediction, as ingested for evaluation.
struct Detection {
  std::string image_id;
  ClassLabel label;
  BoundingBox box;
  double score = 0.0;  // [0, 1]
};

}  // namespace weedkit

#endif  // WEEDKIT_ANNOTATION_HPP_
