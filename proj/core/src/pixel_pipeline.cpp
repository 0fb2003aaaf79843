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
#include "weedkit/pixel_pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <numeric>

#include "weedkit/error.hpp"

namespace weedkit::pipeline {
namespace {

enum class MorphOp { kErode, kDilate };

// One-dimensional pass of a square-kernel erosion or dilation over `n`
// samples spaced `stride` apart. Prefix counts make it O(n) for any radius.
void MorphLine(const std::uint8_t* in, std::uint8_t* out, int n, std::size_t stride, int radius,
               MorphOp op, std::vector<int>& prefix) {
  prefix.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + in[i * stride];
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - radius);
    const int hi = std::min(n - 1, i + radius);
    const int on = prefix[hi + 1] - prefix[lo];
    // Clipping the window to the image makes out-of-image pixels neutral.
    out[i * stride] = (op == MorphOp::kDilate) ? (on > 0) : (on == hi - lo + 1);
  }
}

BinaryMask Morph(const BinaryMask& mask, int kernel, MorphOp op) {
  if (kernel < 1 || kernel % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument, "morphology kernel must be odd and >= 1");
  }
  const int radius = kernel / 2;
  if (radius == 0 || mask.width() == 0 || mask.height() == 0) return mask;

  const int w = mask.width();
  const int h = mask.height();
  BinaryMask rows(w, h);
  BinaryMask result(w, h);
  std::vector<int> prefix;
  const auto* src = mask.raw().data();
  auto* tmp = rows.raw().data();
  for (int y = 0; y < h; ++y) {
    const auto offset = static_cast<std::size_t>(y) * w;
    MorphLine(src + offset, tmp + offset, w, 1, radius, op, prefix);
  }
  auto* dst = result.raw().data();
  for (int x = 0; x < w; ++x) {
    MorphLine(tmp + x, dst + x, h, static_cast<std::size_t>(w), radius, op, prefix);
  }
  return result;
}

}  // namespace

RasterImage::RasterImage(int w, int h)
    : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

bool RasterImage::valid() const {
  return width > 0 && height > 0 &&
         data.size() == static_cast<std::size_t>(width) * height * 3;
}

void RasterImage::set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  auto* p = &data[(static_cast<std::size_t>(y) * width + x) * 3];
  p[0] = r;
  p[1] = g;
  p[2] = b;
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

void MaskConfig::Validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (!(hue_min >= 0.0 && hue_min < hue_max && hue_max < 1.0)) {
    fail("mask config needs 0 <= hue_min < hue_max < 1");
  }
  if (!(sat_min >= 0.0 && sat_min <= 1.0)) fail("mask config needs 0 <= sat_min <= 1");
  if (morph_kernel < 1 || morph_kernel % 2 == 0) fail("morph_kernel must be odd and >= 1");
  if (connectivity != Connectivity::kFour && connectivity != Connectivity::kEight) {
    fail("connectivity must be 4 or 8");
  }
  if (!(min_area_fraction >= 0.0 && min_area_fraction <= 1.0)) {
    fail("min_area_fraction must be within [0, 1]");
  }
}

NormalizedImage Normalize(const RasterImage& image) {
  NormalizedImage out{image.width, image.height, std::vector<float>(image.data.size())};
  std::transform(image.data.begin(), image.data.end(), out.data.begin(),
                 [](std::uint8_t s) { return static_cast<float>(s / 255.0); });
  return out;
}

Hsv RgbToHsv(float r, float g, float b) {
  const double rd = r, gd = g, bd = b;
  const double max = std::max({rd, gd, bd});
  const double min = std::min({rd, gd, bd});
  const double delta = max - min;

  Hsv out;
  out.v = static_cast<float>(max);
  out.s = max > 0.0 ? static_cast<float>(delta / max) : 0.0f;
  if (delta <= 0.0) return out;

  double sector;
  if (max == rd) {
    sector = (gd - bd) / delta;
    if (sector < 0.0) sector += 6.0;
  } else if (max == gd) {
    sector = (bd - rd) / delta + 2.0;
  } else {
    sector = (rd - gd) / delta + 4.0;
  }
  out.h = static_cast<float>(sector / 6.0);
  if (out.h >= 1.0f) out.h = 0.0f;
  return out;
}

HsvImage RgbToHsv(const NormalizedImage& image) {
  HsvImage out{image.width, image.height, {}};
  out.data.resize(static_cast<std::size_t>(image.width) * image.height);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    out.data[i] = RgbToHsv(image.data[3 * i], image.data[3 * i + 1], image.data[3 * i + 2]);
  }
  return out;
}

BinaryMask GreenMask(const HsvImage& image, const MaskConfig& config) {
  config.Validate();
  // Thresholds are compared at the storage precision of the hue samples so a
  // hue that lands exactly on a band edge stays inside the closed interval.
  const float hue_min = static_cast<float>(config.hue_min);
  const float hue_max = static_cast<float>(config.hue_max);
  const float sat_min = static_cast<float>(config.sat_min);
  BinaryMask mask(image.width, image.height);
  auto bits = mask.raw();
  for (std::size_t i = 0; i < image.data.size(); ++i) {
    const Hsv& p = image.data[i];
    bits[i] = (p.h >= hue_min && p.h <= hue_max && p.s >= sat_min) ? 1 : 0;
  }
  return mask;
}

BinaryMask Erode(const BinaryMask& mask, int kernel) { return Morph(mask, kernel, MorphOp::kErode); }
BinaryMask Dilate(const BinaryMask& mask, int kernel) { return Morph(mask, kernel, MorphOp::kDilate); }
BinaryMask Open(const BinaryMask& mask, int kernel) { return Dilate(Erode(mask, kernel), kernel); }
BinaryMask Close(const BinaryMask& mask, int kernel) { return Erode(Dilate(mask, kernel), kernel); }

BinaryMask MorphRefine(const BinaryMask& mask, const MaskConfig& config) {
  return Close(Open(mask, config.morph_kernel), config.morph_kernel);
}

LabeledRegions ConnectedComponents(const BinaryMask& mask, Connectivity connectivity) {
  const int w = mask.width();
  const int h = mask.height();
  LabeledRegions out{w, h, std::vector<std::int32_t>(static_cast<std::size_t>(w) * h, 0), {}};

  static constexpr int kDx[] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDy[] = {0, 0, 1, -1, 1, -1, 1, -1};
  const int neighbours = connectivity == Connectivity::kEight ? 8 : 4;

  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto idx = static_cast<std::size_t>(y) * w + x;
      if (!mask.at(x, y) || out.labels[idx] != 0) continue;

      const auto id = static_cast<std::int32_t>(out.regions.size() + 1);
      Region region{0, BoundingBox{x, y, x, y}};
      out.labels[idx] = id;
      stack.assign(1, {x, y});
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        ++region.pixel_count;
        region.box.xmin = std::min(region.box.xmin, cx);
        region.box.xmax = std::max(region.box.xmax, cx);
        region.box.ymin = std::min(region.box.ymin, cy);
        region.box.ymax = std::max(region.box.ymax, cy);
        for (int k = 0; k < neighbours; ++k) {
          const int nx = cx + kDx[k];
          const int ny = cy + kDy[k];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const auto nidx = static_cast<std::size_t>(ny) * w + nx;
          if (mask.at(nx, ny) && out.labels[nidx] == 0) {
            out.labels[nidx] = id;
            stack.emplace_back(nx, ny);
          }
        }
      }
      out.regions.push_back(region);
    }
  }
  return out;
}

std::vector<BoundingBox> RegionsToBoxes(const LabeledRegions& regions, const MaskConfig& config) {
  const double floor_pixels =
      config.min_area_fraction * static_cast<double>(regions.width) * regions.height;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < regions.regions.size(); ++i) {
    if (static_cast<double>(regions.regions[i].pixel_count) >= floor_pixels) kept.push_back(i);
  }
  // Indices ascend with region id, so a stable sort keeps id order on ties.
  std::stable_sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
    return regions.regions[a].pixel_count > regions.regions[b].pixel_count;
  });
  std::vector<BoundingBox> boxes;
  boxes.reserve(kept.size());
  for (auto i : kept) boxes.push_back(regions.regions[i].box);
  return boxes;
}

Annotation AutoAnnotate(const RasterImage& image, const ClassLabel& label,
                        const MaskConfig& config, const std::string& filename) {
  config.Validate();
  if (!image.valid()) throw Error(ErrorCode::kInvalidArgument, "invalid raster image");

  const auto mask = MorphRefine(GreenMask(RgbToHsv(Normalize(image)), config), config);
  const auto boxes = RegionsToBoxes(ConnectedComponents(mask, config.connectivity), config);
  if (boxes.empty()) {
    throw Error(ErrorCode::kNoRegionsFound, "no plant region above the size floor in " + filename);
  }

  Annotation ann;
  ann.filename = filename;
  ann.image_id = std::filesystem::path(filename).stem().string();
  ann.width = image.width;
  ann.height = image.height;
  ann.depth = 3;
  for (const auto& box : boxes) ann.objects.push_back(AnnotatedObject{label, box});
  return ann;
}

}  // namespace weedkit::pipeline
