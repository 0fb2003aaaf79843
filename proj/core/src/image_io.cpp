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
#include "weedkit/image_io.hpp"

#include <cstring>
#include <string>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "weedkit/error.hpp"
#include "weedkit/file_util.hpp"

namespace weedkit::imageio {
namespace {

cv::Mat Decode(const std::filesystem::path& path) {
  // Decode from memory so non-ASCII paths and unreadable files surface the
  // same way.
  std::string bytes;
  try {
    bytes = io::ReadFile(path);
  } catch (const Error&) {
    return {};
  }
  if (bytes.empty()) return {};
  const cv::Mat buf(1, static_cast<int>(bytes.size()), CV_8UC1, bytes.data());
  try {
    return cv::imdecode(buf, cv::IMREAD_COLOR);
  } catch (const cv::Exception&) {
    return {};
  }
}

}  // namespace

pipeline::RasterImage ReadImage(const std::filesystem::path& path) {
  const cv::Mat bgr = Decode(path);
  if (bgr.empty()) throw Error(ErrorCode::kIoError, "cannot decode image " + path.string());
  pipeline::RasterImage img(bgr.cols, bgr.rows);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) img.set(x, y, row[x][2], row[x][1], row[x][0]);
  }
  return img;
}

void WritePng(const std::filesystem::path& path, const pipeline::RasterImage& image) {
  if (!image.valid()) throw Error(ErrorCode::kInvalidArgument, "invalid raster image");
  cv::Mat bgr(image.height, image.width, CV_8UC3);
  for (int y = 0; y < image.height; ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < image.width; ++x) {
      const auto p = image.pixel(x, y);
      row[x] = cv::Vec3b(p[2], p[1], p[0]);
    }
  }
  std::vector<std::uint8_t> out;
  if (!cv::imencode(".png", bgr, out)) {
    throw Error(ErrorCode::kIoError, "PNG encoding failed for " + path.string());
  }
  io::WriteFileAtomic(path, std::string_view(reinterpret_cast<const char*>(out.data()), out.size()));
}

std::optional<std::pair<int, int>> ProbeSize(const std::filesystem::path& path) {
  const cv::Mat img = Decode(path);
  if (img.empty()) return std::nullopt;
  return std::make_pair(img.cols, img.rows);
}

}  // namespace weedkit::imageio
