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
// Review state over an annotated dataset directory. The VOC files stay the
// source of truth for boxes; review flags and revisions live in a sidecar
// manifest (.review_manifest.json) in the same directory.
//
// Writes to one image are serialized; different images are independent.
// Every accepted box write bumps that image's revision by exactly one, and a
// write carrying a stale revision is rejected rather than merged.
#ifndef WEEDKIT_REVIEW_STORE_HPP_
#define WEEDKIT_REVIEW_STORE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "weedkit/error.hpp"
#include "weedkit/taxonomy.hpp"

namespace weedkit::review {

inline constexpr char kManifestName[] = ".review_manifest.json";

/// A box on the wire: canonical label text and 0-based inclusive pixels.
struct ReviewBox {
  std::string label;
  int xmin = 0;
  int ymin = 0;
  int xmax = 0;
  int ymax = 0;
  std::string pose = "Unspecified";
  int truncated = 0;
  int difficult = 0;

  friend bool operator==(const ReviewBox&, const ReviewBox&) = default;
};

struct ReviewRecord {
  std::string image_id;
  std::string filename;
  int width = 0;
  int height = 0;
  std::vector<ReviewBox> boxes;
  bool reviewed = false;
  std::int64_t revision = 0;
};

struct ImageSummary {
  std::string image_id;
  bool reviewed = false;
  std::size_t box_count = 0;
};

struct ImagePage {
  std::size_t total = 0;
  std::size_t offset = 0;
  std::size_t limit = 0;
  std::vector<ImageSummary> items;
};

struct BoxIssue {
  int box = -1;  // index into the submitted list, -1 for record-level issues
  std::string message;
};

/// Error(kValidationFailed) with one entry per offending box.
class ValidationFailed : public Error {
 public:
  explicit ValidationFailed(std::vector<BoxIssue> issues);
  const std::vector<BoxIssue>& issues() const { return issues_; }

 private:
  std::vector<BoxIssue> issues_;
};

class ReviewStore {
 public:
  /// Scans `dir` for VOC files (ids are the file stems) and loads the
  /// manifest if present. Throws kIoError for a missing directory and
  /// kMalformedXml / kMalformedRecord for unreadable annotation or manifest
  /// files.
  ReviewStore(std::filesystem::path dir, Taxonomy taxonomy);
  ~ReviewStore();

  ReviewStore(const ReviewStore&) = delete;
  ReviewStore& operator=(const ReviewStore&) = delete;

  const Taxonomy& taxonomy() const { return taxonomy_; }
  const std::filesystem::path& dir() const { return dir_; }
  std::size_t size() const { return ids_.size(); }

  /// Lexicographic by id. `limit` 0 means no limit.
  ImagePage List(std::size_t offset, std::size_t limit) const;

  /// Current record read from disk. Throws kNotFound.
  ReviewRecord Get(const std::string& id) const;

  /// Replaces the boxes of `id` if `expected_revision` is current. Throws
  /// kNotFound, ValidationFailed (nothing written) or kRevisionConflict.
  ReviewRecord Put(const std::string& id, std::int64_t expected_revision,
                   const std::vector<ReviewBox>& boxes);

  /// Persists the review flag without touching the VOC file or revision.
  ReviewRecord SetReviewed(const std::string& id, bool reviewed);

  /// Path of the image the annotation refers to. Throws kNotFound when the
  /// id is unknown or the image file is missing.
  std::filesystem::path ImagePath(const std::string& id) const;

 private:
  struct State {
    std::int64_t revision = 0;
    bool reviewed = false;
    std::size_t box_count = 0;
    // Shared for reads, exclusive for writes, so a read never pairs a new
    // file with an old revision.
    std::unique_ptr<std::shared_mutex> lock = std::make_unique<std::shared_mutex>();
  };

  State& StateFor(const std::string& id);
  const State& StateFor(const std::string& id) const;
  std::filesystem::path XmlPath(const std::string& id) const;
  ReviewRecord ReadRecord(const std::string& id, const State& state) const;
  void SaveManifest();

  std::filesystem::path dir_;
  Taxonomy taxonomy_;
  std::vector<std::string> ids_;
  std::map<std::string, State> states_;
  // Guards revision/reviewed/box_count reads against concurrent updates.
  mutable std::shared_mutex state_mutex_;
  std::mutex manifest_mutex_;
};

}  // namespace weedkit::review

#endif  // WEEDKIT_REVIEW_STORE_HPP_
