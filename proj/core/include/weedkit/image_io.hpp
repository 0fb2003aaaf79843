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
#ifndef WEEDKIT_IMAGE_IO_HPP_
#define WEEDKIT_IMAGE_IO_HPP_

#include <filesystem>
#include <optional>
#include <utility>

#include "weedkit/pixel_pipeline.hpp"

namespace weedkit::imageio {

/// Decodes any format OpenCV reads into 8-bit RGB. Grey and alpha inputs
/// are expanded/dropped. Throws Error(kIoError) when the file cannot be
/// decoded.
pipeline::RasterImage ReadImage(const std::filesystem::path& path);

/// Lossless PNG, written atomically.
void WritePng(const std::filesystem::path& path, const pipeline::RasterImage& image);

/// (width, height) of a decodable image, nullopt otherwise. Suitable as the
/// size probe for dataset validation.
std::optional<std::pair<int, int>> ProbeSize(const std::filesystem::path& path);

}  // namespace weedkit::imageio

#endif  // WEEDKIT_IMAGE_IO_HPP_
