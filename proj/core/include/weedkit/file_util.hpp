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
#ifndef WEEDKIT_FILE_UTIL_HPP_
#define WEEDKIT_FILE_UTIL_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace weedkit::io {

/// Writes to a sibling temp file, fsyncs, then renames over `path`. Readers
/// see either the previous contents or the new ones, never a partial file.
/// Throws Error(kIoError).
void WriteFileAtomic(const std::filesystem::path& path, std::string_view bytes);

/// Throws Error(kIoError).
std::string ReadFile(const std::filesystem::path& path);

/// Lower-cased extension is one of png, jpg, jpeg, bmp, ppm, pgm, tif, tiff, webp.
bool IsImagePath(const std::filesystem::path& path);

/// Regular non-hidden files directly inside `dir`, sorted by filename. Throws kIoError
/// when `dir` cannot be listed.
std::vector<std::filesystem::path> ListFiles(const std::filesystem::path& dir);

}  // namespace weedkit::io

#endif  // WEEDKIT_FILE_UTIL_HPP_
