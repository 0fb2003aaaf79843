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
#ifndef WEEDKIT_ERROR_HPP_
#define WEEDKIT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace weedkit {

// Every failure raised by the library carries one of these codes so callers
// (the CLI, the review service) can map it to an exit status or HTTP status
// without parsing messages.
enum class ErrorCode {
  kInvalidArgument,
  kIoError,
  // Labels and taxonomy.
  kMalformedLabel,
  kUnknownSpecies,
  kInactiveWeek,
  kMalformedTaxonomy,
  // Pixel pipeline.
  kNoRegionsFound,
  // Annotation files and ingestion.
  kMalformedXml,
  kUnknownLabel,
  kBoxOutOfBounds,
  kEmptyIndex,
  kMalformedRecord,
  kScoreOutOfRange,
  // Loss math.
  kDegenerateDistribution,
  kDomainError,
  kEmptyMatrix,
  // Evaluation.
  kAllClassesEmpty,
  // Review service.
  kNotFound,
  kValidationFailed,
  kRevisionConflict,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace weedkit

#endif  // WEEDKIT_ERROR_HPP_
