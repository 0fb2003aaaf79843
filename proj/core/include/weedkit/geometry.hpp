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
#ifndef WEEDKIT_GEOMETRY_HPP_
#define WEEDKIT_GEOMETRY_HPP_

#include <cstdint>

namespace weedkit {

/// Pixel-aligned box. x is the column, y the row, origin top-left, 0-based,
/// inclusive on every edge: a single pixel at (3,4) is {3,4,3,4}.
struct BoundingBox {
  int xmin = 0;
  int ymin = 0;
  int xmax = 0;
  int ymax = 0;

  int width() const { return xmax - xmin + 1; }
  int height() const { return ymax - ymin + 1; }
  std::int64_t area() const {
    return static_cast<std::int64_t>(width()) * height();
  }
  bool valid() const { return 0 <= xmin && xmin <= xmax && 0 <= ymin && ymin <= ymax; }
  bool fits(int image_width, int image_height) const {
    return valid() && xmax < image_width && ymax < image_height;
  }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Continuous box used by the loss and overlap math. Zero-area boxes are legal.
struct RealBox {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double area() const { return (xmax - xmin) * (ymax - ymin); }
  bool valid() const { return xmin <= xmax && ymin <= ymax; }

  friend bool operator==(const RealBox&, const RealBox&) = default;
};

/// The pixel box covers [xmin, xmax+1) x [ymin, ymax+1) in continuous space,
/// so its RealBox area equals BoundingBox::area().
inline RealBox ToRealBox(const BoundingBox& box) {
  return {static_cast<double>(box.xmin), static_cast<double>(box.ymin),
          static_cast<double>(box.xmax) + 1.0, static_cast<double>(box.ymax) + 1.0};
}

}  // namespace weedkit

#endif  // WEEDKIT_GEOMETRY_HPP_
