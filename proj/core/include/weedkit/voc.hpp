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
// Pascal VOC XML. Files carry 1-based inclusive pixel coordinates; the
// in-memory Annotation is 0-based. The +1/-1 shift happens only here.
#ifndef WEEDKIT_VOC_HPP_
#define WEEDKIT_VOC_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "weedkit/annotation.hpp"
#include "weedkit/error.hpp"
#include "weedkit/taxonomy.hpp"

namespace weedkit::io {

/// Fixed element order, tab indentation, trailing newline. Byte-identical
/// output for equal annotations.
std::string WriteVocXml(const Annotation& annotation);

/// Inverse of WriteVocXml. Missing pose/truncated/difficult default to
/// "Unspecified"/0/0; image_id is the stem of <filename>.
/// Throws kMalformedXml, kUnknownLabel or kBoxOutOfBounds.
Annotation ReadVocXml(std::string_view bytes, const Taxonomy& taxonomy);

struct VocIssue {
  ErrorCode code;
  std::string message;
};

/// Parses as much as possible and reports every object-level problem instead
/// of stopping at the first. Objects with issues are dropped from the result.
/// Structural problems (unparseable XML, missing <size>) still throw.
Annotation ReadVocXmlLenient(std::string_view bytes, const Taxonomy& taxonomy,
                             std::vector<VocIssue>& issues);

/// Reads a file; image_id is taken from the file stem, which is the pairing
/// key between annotation and image in a dataset directory.
Annotation ReadVocFile(const std::filesystem::path& path, const Taxonomy& taxonomy);

/// Atomic (temp file + rename).
void WriteVocFile(const std::filesystem::path& path, const Annotation& annotation);

}  // namespace weedkit::io

#endif  // WEEDKIT_VOC_HPP_
