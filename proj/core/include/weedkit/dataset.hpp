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
#ifndef WEEDKIT_DATASET_HPP_
#define WEEDKIT_DATASET_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "weedkit/taxonomy.hpp"

namespace weedkit::io {

struct IndexEntry {
  std::string image_id;
  std::vector<ClassLabel> labels;  // sorted, unique
  std::string source;              // path of the annotation or image, may be empty
};

/// Image ids with the classes present in each image.
class DatasetIndex {
 public:
  /// Throws Error(kInvalidArgument) on a duplicate image_id.
  void Add(IndexEntry entry);
  const std::vector<IndexEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<IndexEntry> entries_;
  std::unordered_set<std::string> ids_;
};

/// Index over every *.xml file in `dir` (non-recursive). Throws on the first
/// unreadable or invalid annotation.
DatasetIndex IndexFromDirectory(const std::filesystem::path& dir, const Taxonomy& taxonomy);

/// Tab-separated text, one image per line: `image_id[<TAB>label,label...[<TAB>source]]`.
/// Blank lines and lines starting with '#' are skipped.
DatasetIndex ReadIndex(std::istream& in, const Taxonomy& taxonomy);
std::string FormatIndex(const DatasetIndex& index);

// --- Splitting -------------------------------------------------------------

/// splitmix64: state += golden gamma, then two xor-shift-multiply rounds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t Next();
  /// Uniform in [0, bound) by rejection: draws below 2^64 mod bound are
  /// discarded, then the draw is reduced modulo bound.
  std::uint64_t Bounded(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;

  /// Throws Error(kInvalidArgument) unless all are positive and finite and
  /// they sum to 1 within 1e-9.
  void Validate() const;
};

enum class SplitMode {
  kUniform,     // one shuffle over all images
  kStratified,  // split separately within each group of images sharing their first label
};

struct SplitResult {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
  std::uint64_t seed = 0;
  SplitRatios ratios;
  SplitMode mode = SplitMode::kUniform;
};

/// Largest-remainder apportionment of n items: floor each quota n*ratio,
/// then hand the leftover items to the largest fractional parts (ties go to
/// the earlier share).
std::array<std::size_t, 3> Apportion(std::size_t n, const SplitRatios& ratios);

/// Fisher-Yates over the lexicographically sorted ids, driven by
/// SplitMix64(seed); the first block is train, then val, then test.
/// Throws kEmptyIndex, kInvalidArgument.
SplitResult SplitDataset(const DatasetIndex& index, const SplitRatios& ratios, std::uint64_t seed,
                         SplitMode mode = SplitMode::kUniform);
SplitResult SplitIds(std::vector<std::string> ids, const SplitRatios& ratios, std::uint64_t seed);

/// train.txt, val.txt, test.txt (one id per line) and manifest.txt.
void WriteSplit(const std::filesystem::path& out_dir, const SplitResult& split);

// --- Statistics -------------------------------------------------------------

struct SpeciesCounts {
  std::string code;
  std::array<std::int64_t, kMaxWeek> weeks{};  // weeks[w - 1]
  std::int64_t total = 0;
};

struct DatasetStats {
  std::vector<SpeciesCounts> species;  // taxonomy order
  std::int64_t grand_total = 0;
};

/// Frames per (species, week): an image counts once for every class present.
DatasetStats ComputeStats(const DatasetIndex& index, const Taxonomy& taxonomy);

/// Species rows, W_1..W_11 columns, per-species and grand totals.
std::string FormatStats(const DatasetStats& stats);

// --- Validation -------------------------------------------------------------

enum class FindingKind {
  kMalformedXml,
  kUnknownLabel,
  kBoxOutOfBounds,
  kMissingImage,
  kMissingAnnotation,
  kEmptyAnnotation,
  kSizeMismatch,
  kUnreadableImage,
};
std::string_view FindingKindName(FindingKind kind);

struct Finding {
  std::string file;  // file name relative to the dataset directory
  FindingKind kind;
  std::string message;
};

struct ValidationReport {
  std::size_t annotations_checked = 0;
  std::size_t images_seen = 0;
  std::vector<Finding> findings;

  bool ok() const { return findings.empty(); }
  std::string Format() const;
};

/// Decodes an image header and returns (width, height), or nullopt when the
/// file cannot be decoded.
using ImageSizeProbe = std::function<std::optional<std::pair<int, int>>(const std::filesystem::path&)>;

/// Checks every XML in `dir`: well-formedness, label membership, box bounds,
/// pairing with an image of the same stem, and (when `probe` is given) that
/// the recorded size matches the image. Failures are findings, not
/// exceptions; only an unlistable directory throws.
ValidationReport ValidateDataset(const std::filesystem::path& dir, const Taxonomy& taxonomy,
                                 const ImageSizeProbe& probe = {});

}  // namespace weedkit::io

#endif  // WEEDKIT_DATASET_HPP_
