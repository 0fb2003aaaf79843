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
#include "weedkit/review_store.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "weedkit/annotation.hpp"
#include "weedkit/file_util.hpp"
#include "weedkit/voc.hpp"

namespace weedkit::review {
namespace {

namespace fs = std::filesystem;

std::string JoinIssues(const std::vector<BoxIssue>& issues) {
  std::string out = "annotation rejected";
  for (const auto& i : issues) {
    out += i.box >= 0 ? "; box " + std::to_string(i.box) + ": " : "; ";
    out += i.message;
  }
  return out;
}

}  // namespace

ValidationFailed::ValidationFailed(std::vector<BoxIssue> issues)
    : Error(ErrorCode::kValidationFailed, JoinIssues(issues)), issues_(std::move(issues)) {}

ReviewStore::ReviewStore(fs::path dir, Taxonomy taxonomy)
    : dir_(std::move(dir)), taxonomy_(std::move(taxonomy)) {
  if (!fs::is_directory(dir_)) throw Error(ErrorCode::kIoError, "not a directory: " + dir_.string());
  for (const auto& path : io::ListFiles(dir_)) {
    if (path.extension() != ".xml") continue;
    const auto ann = io::ReadVocFile(path, taxonomy_);
    State state;
    state.box_count = ann.objects.size();
    ids_.push_back(ann.image_id);
    states_.emplace(ann.image_id, std::move(state));
  }

  const fs::path manifest = dir_ / kManifestName;
  if (!fs::exists(manifest)) return;
  try {
    const auto doc = nlohmann::json::parse(io::ReadFile(manifest));
    if (!doc.is_object() || doc.value("version", 0) != 1 || !doc.contains("images") ||
        !doc.at("images").is_object()) {
      throw Error(ErrorCode::kMalformedRecord,
                  manifest.string() + ": expected {\"version\": 1, \"images\": {...}}");
    }
    for (const auto& [id, entry] : doc.at("images").items()) {
      auto it = states_.find(id);
      if (it == states_.end()) continue;  // annotation removed since
      it->second.revision = entry.at("revision").get<std::int64_t>();
      it->second.reviewed = entry.at("reviewed").get<bool>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, manifest.string() + ": " + e.what());
  }
}

ReviewStore::~ReviewStore() = default;

ReviewStore::State& ReviewStore::StateFor(const std::string& id) {
  auto it = states_.find(id);
  if (it == states_.end()) throw Error(ErrorCode::kNotFound, "no annotation for image '" + id + "'");
  return it->second;
}

const ReviewStore::State& ReviewStore::StateFor(const std::string& id) const {
  return const_cast<ReviewStore*>(this)->StateFor(id);
}

fs::path ReviewStore::XmlPath(const std::string& id) const { return dir_ / (id + ".xml"); }

ReviewRecord ReviewStore::ReadRecord(const std::string& id, const State& state) const {
  const auto ann = io::ReadVocFile(XmlPath(id), taxonomy_);
  ReviewRecord rec;
  rec.image_id = id;
  rec.filename = ann.filename;
  rec.width = ann.width;
  rec.height = ann.height;
  for (const auto& obj : ann.objects) {
    rec.boxes.push_back({obj.label.ToString(), obj.box.xmin, obj.box.ymin, obj.box.xmax, obj.box.ymax,
                         obj.pose, obj.truncated, obj.difficult});
  }
  std::shared_lock lock(state_mutex_);
  rec.reviewed = state.reviewed;
  rec.revision = state.revision;
  return rec;
}

ImagePage ReviewStore::List(std::size_t offset, std::size_t limit) const {
  ImagePage page;
  page.total = ids_.size();
  page.offset = offset;
  page.limit = limit;
  const std::size_t begin = std::min(offset, ids_.size());
  const std::size_t end = limit == 0 ? ids_.size() : std::min(ids_.size(), begin + limit);
  std::shared_lock lock(state_mutex_);
  for (std::size_t i = begin; i < end; ++i) {
    const auto& s = states_.at(ids_[i]);
    page.items.push_back({ids_[i], s.reviewed, s.box_count});
  }
  return page;
}

ReviewRecord ReviewStore::Get(const std::string& id) const {
  const State& state = StateFor(id);
  std::shared_lock lock(*state.lock);
  return ReadRecord(id, state);
}

ReviewRecord ReviewStore::Put(const std::string& id, std::int64_t expected_revision,
                              const std::vector<ReviewBox>& boxes) {
  State& state = StateFor(id);
  std::unique_lock lock(*state.lock);
  {
    std::shared_lock guard(state_mutex_);
    if (state.revision != expected_revision) {
      throw Error(ErrorCode::kRevisionConflict,
                  "image '" + id + "' is at revision " + std::to_string(state.revision) +
                      ", not " + std::to_string(expected_revision));
    }
  }

  Annotation ann = io::ReadVocFile(XmlPath(id), taxonomy_);
  ann.objects.clear();
  std::vector<BoxIssue> issues;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& b = boxes[i];
    const int index = static_cast<int>(i);
    AnnotatedObject obj;
    try {
      obj.label = taxonomy_.ParseLabel(b.label);
    } catch (const Error& e) {
      issues.push_back({index, e.what()});
      continue;
    }
    obj.box = {b.xmin, b.ymin, b.xmax, b.ymax};
    if (!obj.box.valid() || !obj.box.fits(ann.width, ann.height)) {
      issues.push_back({index, "box (" + std::to_string(b.xmin) + "," + std::to_string(b.ymin) + ")-(" +
                                   std::to_string(b.xmax) + "," + std::to_string(b.ymax) +
                                   ") is empty or outside the " + std::to_string(ann.width) + "x" +
                                   std::to_string(ann.height) + " image"});
      continue;
    }
    if (b.pose.empty() || b.truncated < 0 || b.truncated > 1 || b.difficult < 0 || b.difficult > 1) {
      issues.push_back({index, "pose must be non-empty and truncated/difficult 0 or 1"});
      continue;
    }
    obj.pose = b.pose;
    obj.truncated = b.truncated;
    obj.difficult = b.difficult;
    ann.objects.push_back(std::move(obj));
  }
  if (!issues.empty()) throw ValidationFailed(std::move(issues));

  io::WriteVocFile(XmlPath(id), ann);
  {
    std::unique_lock guard(state_mutex_);
    ++state.revision;
    state.box_count = ann.objects.size();
  }
  SaveManifest();
  return ReadRecord(id, state);
}

ReviewRecord ReviewStore::SetReviewed(const std::string& id, bool reviewed) {
  State& state = StateFor(id);
  std::unique_lock lock(*state.lock);
  bool changed = false;
  {
    std::unique_lock guard(state_mutex_);
    changed = state.reviewed != reviewed;
    state.reviewed = reviewed;
  }
  if (changed) SaveManifest();
  return ReadRecord(id, state);
}

fs::path ReviewStore::ImagePath(const std::string& id) const {
  const State& state = StateFor(id);
  std::string filename;
  {
    std::shared_lock lock(*state.lock);
    filename = io::ReadVocFile(XmlPath(id), taxonomy_).filename;
  }
  // Only plain names inside the dataset directory are served.
  const fs::path name(filename);
  if (!filename.empty() && name == name.filename() && filename != "." && filename != "..") {
    const fs::path path = dir_ / name;
    if (fs::is_regular_file(path)) return path;
  }
  for (const auto& path : io::ListFiles(dir_)) {
    if (path.stem() == id && io::IsImagePath(path)) return path;
  }
  throw Error(ErrorCode::kNotFound, "no image file for '" + id + "'");
}

void ReviewStore::SaveManifest() {
  std::lock_guard lock(manifest_mutex_);
  nlohmann::ordered_json images = nlohmann::ordered_json::object();
  {
    std::shared_lock guard(state_mutex_);
    for (const auto& id : ids_) {
      const auto& s = states_.at(id);
      if (s.revision == 0 && !s.reviewed) continue;
      images[id] = {{"revision", s.revision}, {"reviewed", s.reviewed}};
    }
  }
  const nlohmann::ordered_json doc = {{"version", 1}, {"images", std::move(images)}};
  io::WriteFileAtomic(dir_ / kManifestName, doc.dump(2) + "\n");
}

}  // namespace weedkit::review
