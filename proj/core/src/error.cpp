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
#include "weedkit/error.hpp"

namespace weedkit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kMalformedLabel: return "MalformedLabel";
    case ErrorCode::kUnknownSpecies: return "UnknownSpecies";
    case ErrorCode::kInactiveWeek: return "InactiveWeek";
    case ErrorCode::kMalformedTaxonomy: return "MalformedTaxonomy";
    case ErrorCode::kNoRegionsFound: return "NoRegionsFound";
    case ErrorCode::kMalformedXml: return "MalformedXml";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kBoxOutOfBounds: return "BoxOutOfBounds";
    case ErrorCode::kEmptyIndex: return "EmptyIndex";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::kDegenerateDistribution: return "DegenerateDistribution";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kAllClassesEmpty: return "AllClassesEmpty";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kValidationFailed: return "ValidationFailed";
    case ErrorCode::kRevisionConflict: return "RevisionConflict";
  }
  return "Unknown";
}

}  // namespace weedkit
