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
// Green-area auto-annotation: normalize -> HSV -> hue/saturation threshold ->
// opening + closing -> connected components -> tight bounding boxes.
#ifndef WEEDKIT_PIXEL_PIPELINE_HPP_
#define WEEDKIT_PIXEL_PIPELINE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "weedkit/annotation.hpp"
#include "weedkit/geometry.hpp"
#include "weedkit/taxonomy.hpp"

namespace weedkit::pipeline {

/// 8-bit interleaved RGB, row-major.
struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // width * height * 3

  RasterImage() = default;
  RasterImage(int w, int h);  // zero-filled
  bool valid() const;
  std::span<const std::uint8_t, 3> pixel(int x, int y) const {
    return std::span<const std::uint8_t, 3>(&data[(static_cast<std::size_t>(y) * width + x) * 3], 3);
  }
  void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
};

/// RGB samples scaled into [0, 1].
struct NormalizedImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;  // width * height * 3
};

struct Hsv {
  float h = 0.0f;  // fraction of a full turn, [0, 1)
  float s = 0.0f;
  float v = 0.0f;
};

struct HsvImage {
  int width = 0;
  int height = 0;
  std::vector<Hsv> data;  // width * height

  const Hsv& at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool fill = false)
      : width_(width), height_(height),
        bits_(static_cast<std::size_t>(width) * height, fill ? 1 : 0) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool at(int x, int y) const { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool on) { bits_[index(x, y)] = on ? 1 : 0; }
  std::size_t count() const;
  std::span<const std::uint8_t> raw() const { return bits_; }
  std::span<std::uint8_t> raw() { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;  // one byte per pixel, 0 or 1
};

enum class Connectivity { kFour = 4, kEight = 8 };

struct MaskConfig {
  double hue_min = 25.0 / 360.0;
  double hue_max = 160.0 / 360.0;
  double sat_min = 0.20;
  int morph_kernel = 3;
  Connectivity connectivity = Connectivity::kEight;
  double min_area_fraction = 0.0005;

  /// Throws Error(kInvalidArgument) unless 0 <= hue_min < hue_max < 1,
  /// 0 <= sat_min <= 1, morph_kernel is odd and >= 1, min_area_fraction in [0, 1].
  void Validate() const;
};

struct Region {
  std::int64_t pixel_count = 0;
  BoundingBox box;
};

struct LabeledRegions {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> labels;  // 0 = background, else 1..regions.size()
  std::vector<Region> regions;       // regions[id - 1]

  std::int32_t at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

/// Every sample divided by 255.0.
NormalizedImage Normalize(const RasterImage& image);

/// Hexcone conversion. Achromatic pixels get h = 0, black pixels s = 0.
HsvImage RgbToHsv(const NormalizedImage& image);
Hsv RgbToHsv(float r, float g, float b);

/// Foreground iff hue_min <= h <= hue_max and s >= sat_min. No value test.
BinaryMask GreenMask(const HsvImage& image, const MaskConfig& config);

/// Square structuring element of odd side `kernel`. Out-of-image pixels are
/// neutral: they count as foreground for erosion and background for dilation.
BinaryMask Erode(const BinaryMask& mask, int kernel);
BinaryMask Dilate(const BinaryMask& mask, int kernel);
BinaryMask Open(const BinaryMask& mask, int kernel);
BinaryMask Close(const BinaryMask& mask, int kernel);

/// Opening then closing, once each, with config.morph_kernel.
BinaryMask MorphRefine(const BinaryMask& mask, const MaskConfig& config);

/// Maximal connected foreground sets. Ids are assigned in raster-scan order
/// of each region's first pixel.
LabeledRegions ConnectedComponents(const BinaryMask& mask, Connectivity connectivity);

/// Tight boxes of regions with pixel_count >= min_area_fraction * W * H,
/// largest region first, ties by region id.
std::vector<BoundingBox> RegionsToBoxes(const LabeledRegions& regions, const MaskConfig& config);

/// The full chain with every box tagged `label`. Throws Error(kNoRegionsFound)
/// when nothing survives the area floor.
Annotation AutoAnnotate(const RasterImage& image, const ClassLabel& label,
                        const MaskConfig& config, const std::string& filename = "image.png");

}  // namespace weedkit::pipeline

#endif  // WEEDKIT_PIXEL_PIPELINE_HPP_
