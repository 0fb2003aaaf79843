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
#include "weedkit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

#include "weedkit/error.hpp"
#include "weedkit/file_util.hpp"
#include "weedkit/voc.hpp"

namespace weedkit::io {
namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> SplitOn(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == std::string_view::npos ? s.npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void Shuffle(std::vector<std::string>& ids, SplitMix64& rng) {
  for (std::size_t i = ids.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.Bounded(i));
    std::swap(ids[i - 1], ids[j]);
  }
}

void AppendBlocks(const std::vector<std::string>& shuffled, const SplitRatios& ratios,
                  SplitResult& out) {
  const auto sizes = Apportion(shuffled.size(), ratios);
  auto it = shuffled.begin();
  out.train.insert(out.train.end(), it, it + static_cast<std::ptrdiff_t>(sizes[0]));
  it += static_cast<std::ptrdiff_t>(sizes[0]);
  out.val.insert(out.val.end(), it, it + static_cast<std::ptrdiff_t>(sizes[1]));
  it += static_cast<std::ptrdiff_t>(sizes[1]);
  out.test.insert(out.test.end(), it, shuffled.end());
}

std::string JoinLines(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    out += id;
    out += '\n';
  }
  return out;
}

}  // namespace

void DatasetIndex::Add(IndexEntry entry) {
  if (!ids_.insert(entry.image_id).second) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate image id '" + entry.image_id + "'");
  }
  std::sort(entry.labels.begin(), entry.labels.end());
  entry.labels.erase(std::unique(entry.labels.begin(), entry.labels.end()), entry.labels.end());
  entries_.push_back(std::move(entry));
}

DatasetIndex IndexFromDirectory(const fs::path& dir, const Taxonomy& taxonomy) {
  DatasetIndex index;
  for (const auto& path : ListFiles(dir)) {
    if (path.extension() != ".xml") continue;
    const auto ann = ReadVocFile(path, taxonomy);
    IndexEntry entry{ann.image_id, {}, path.filename().string()};
    for (const auto& obj : ann.objects) entry.labels.push_back(obj.label);
    index.Add(std::move(entry));
  }
  return index;
}

DatasetIndex ReadIndex(std::istream& in, const Taxonomy& taxonomy) {
  DatasetIndex index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = SplitOn(line, '\t');
    if (fields.size() > 3 || fields[0].empty()) {
      throw Error(ErrorCode::kMalformedRecord,
                  "index line " + std::to_string(line_no) + ": expected id[<TAB>labels[<TAB>source]]");
    }
    IndexEntry entry{std::string(fields[0]), {}, fields.size() > 2 ? std::string(fields[2]) : ""};
    if (fields.size() > 1 && !fields[1].empty()) {
      for (const auto label : SplitOn(fields[1], ',')) {
        try {
          entry.labels.push_back(taxonomy.ParseLabel(label));
        } catch (const Error& e) {
          throw Error(e.code(), "index line " + std::to_string(line_no) + ": " + e.what());
        }
      }
    }
    try {
      index.Add(std::move(entry));
    } catch (const Error& e) {
      throw Error(e.code(), "index line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return index;
}

std::string FormatIndex(const DatasetIndex& index) {
  std::string out;
  for (const auto& e : index.entries()) {
    out += e.image_id;
    out += '\t';
    for (std::size_t i = 0; i < e.labels.size(); ++i) {
      if (i > 0) out += ',';
      out += e.labels[i].ToString();
    }
    out += '\t';
    out += e.source;
    out += '\n';
  }
  return out;
}

std::uint64_t SplitMix64::Next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::Bounded(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "Bounded(0)");
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = Next();
    if (r >= threshold) return r % bound;
  }
}

void SplitRatios::Validate() const {
  for (double r : {train, val, test}) {
    if (!std::isfinite(r) || r <= 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "split ratios must be positive");
    }
  }
  if (std::fabs(train + val + test - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "split ratios must sum to 1 (got " +
                                                 FormatDouble(train + val + test) + ")");
  }
}

std::array<std::size_t, 3> Apportion(std::size_t n, const SplitRatios& ratios) {
  const double sum = ratios.train + ratios.val + ratios.test;
  const double total = static_cast<double>(n);
  const std::array<double, 3> quota = {total * (ratios.train / sum), total * (ratios.val / sum),
                                       total * (ratios.test / sum)};
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> frac{};
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double f = std::floor(quota[i]);
    sizes[i] = static_cast<std::size_t>(f);
    frac[i] = quota[i] - f;
    assigned += sizes[i];
  }
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return frac[a] > frac[b]; });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) ++sizes[order[k % 3]];
  // Rounding can overshoot by one when a quota lands a hair above an integer.
  for (std::size_t k = 0; assigned > n; ++k) {
    auto& s = sizes[order[2 - k % 3]];
    if (s > 0) {
      --s;
      --assigned;
    }
  }
  return sizes;
}

SplitResult SplitIds(std::vector<std::string> ids, const SplitRatios& ratios, std::uint64_t seed) {
  ratios.Validate();
  if (ids.empty()) throw Error(ErrorCode::kEmptyIndex, "cannot split an empty index");
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw Error(ErrorCode::kInvalidArgument, "image ids must be unique");
  }
  SplitMix64 rng(seed);
  Shuffle(ids, rng);
  SplitResult out;
  out.seed = seed;
  out.ratios = ratios;
  AppendBlocks(ids, ratios, out);
  return out;
}

SplitResult SplitDataset(const DatasetIndex& index, const SplitRatios& ratios, std::uint64_t seed,
                         SplitMode mode) {
  if (mode == SplitMode::kUniform) {
    std::vector<std::string> ids;
    ids.reserve(index.size());
    for (const auto& e : index.entries()) ids.push_back(e.image_id);
    return SplitIds(std::move(ids), ratios, seed);
  }

  ratios.Validate();
  if (index.empty()) throw Error(ErrorCode::kEmptyIndex, "cannot split an empty index");
  std::map<std::string, std::vector<std::string>> strata;
  for (const auto& e : index.entries()) {
    strata[e.labels.empty() ? std::string() : e.labels.front().ToString()].push_back(e.image_id);
  }
  SplitResult out;
  out.seed = seed;
  out.ratios = ratios;
  out.mode = SplitMode::kStratified;
  SplitMix64 rng(seed);
  for (auto& [key, ids] : strata) {
    std::sort(ids.begin(), ids.end());
    Shuffle(ids, rng);
    AppendBlocks(ids, ratios, out);
  }
  return out;
}

void WriteSplit(const fs::path& out_dir, const SplitResult& split) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + out_dir.string() + ": " + ec.message());
  WriteFileAtomic(out_dir / "train.txt", JoinLines(split.train));
  WriteFileAtomic(out_dir / "val.txt", JoinLines(split.val));
  WriteFileAtomic(out_dir / "test.txt", JoinLines(split.test));
  std::ostringstream manifest;
  manifest << "seed=" << split.seed << "\n"
           << "ratios=" << FormatDouble(split.ratios.train) << "," << FormatDouble(split.ratios.val)
           << "," << FormatDouble(split.ratios.test) << "\n"
           << "mode=" << (split.mode == SplitMode::kUniform ? "uniform" : "stratified") << "\n"
           << "shuffle=splitmix64-fisher-yates\n"
           << "train=" << split.train.size() << "\n"
           << "val=" << split.val.size() << "\n"
           << "test=" << split.test.size() << "\n";
  WriteFileAtomic(out_dir / "manifest.txt", manifest.str());
}

DatasetStats ComputeStats(const DatasetIndex& index, const Taxonomy& taxonomy) {
  DatasetStats stats;
  std::map<std::string, std::size_t> row;
  for (const auto& s : taxonomy.species()) {
    row[s.code] = stats.species.size();
    stats.species.push_back(SpeciesCounts{s.code, {}, 0});
  }
  for (const auto& e : index.entries()) {
    for (const auto& label : e.labels) {
      auto it = row.find(label.code);
      if (it == row.end() || label.week < kMinWeek || label.week > kMaxWeek) continue;
      ++stats.species[it->second].weeks[static_cast<std::size_t>(label.week - 1)];
    }
  }
  for (auto& s : stats.species) {
    s.total = std::accumulate(s.weeks.begin(), s.weeks.end(), std::int64_t{0});
    stats.grand_total += s.total;
  }
  return stats;
}

std::string FormatStats(const DatasetStats& stats) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "Species" << std::right << std::setw(10) << "Total";
  for (int w = kMinWeek; w <= kMaxWeek; ++w) out << std::setw(8) << ("W_" + std::to_string(w));
  out << "\n";
  for (const auto& s : stats.species) {
    out << std::left << std::setw(8) << s.code << std::right << std::setw(10) << s.total;
    for (auto c : s.weeks) out << std::setw(8) << c;
    out << "\n";
  }
  out << std::left << std::setw(8) << "TOTAL" << std::right << std::setw(10) << stats.grand_total
      << "\n";
  return out.str();
}

std::string_view FindingKindName(FindingKind kind) {
  switch (kind) {
    case FindingKind::kMalformedXml: return "MalformedXml";
    case FindingKind::kUnknownLabel: return "UnknownLabel";
    case FindingKind::kBoxOutOfBounds: return "BoxOutOfBounds";
    case FindingKind::kMissingImage: return "MissingImage";
    case FindingKind::kMissingAnnotation: return "MissingAnnotation";
    case FindingKind::kEmptyAnnotation: return "EmptyAnnotation";
    case FindingKind::kSizeMismatch: return "SizeMismatch";
    case FindingKind::kUnreadableImage: return "UnreadableImage";
  }
  return "Unknown";
}

std::string ValidationReport::Format() const {
  std::ostringstream out;
  for (const auto& f : findings) {
    out << f.file << ": " << FindingKindName(f.kind) << ": " << f.message << "\n";
  }
  out << annotations_checked << " annotations, " << images_seen << " images, " << findings.size()
      << (findings.size() == 1 ? " finding" : " findings") << "\n";
  return out.str();
}

ValidationReport ValidateDataset(const fs::path& dir, const Taxonomy& taxonomy,
                                 const ImageSizeProbe& probe) {
  ValidationReport report;
  std::map<std::string, fs::path> images;
  std::vector<fs::path> xmls;
  for (const auto& path : ListFiles(dir)) {
    if (path.extension() == ".xml") {
      xmls.push_back(path);
    } else if (IsImagePath(path)) {
      images.emplace(path.stem().string(), path);
      ++report.images_seen;
    }
  }

  std::map<std::string, bool> paired;
  for (const auto& xml : xmls) {
    ++report.annotations_checked;
    const std::string name = xml.filename().string();
    const std::string stem = xml.stem().string();
    auto add = [&](FindingKind kind, std::string message) {
      report.findings.push_back(Finding{name, kind, std::move(message)});
    };

    std::vector<VocIssue> issues;
    Annotation ann;
    try {
      ann = ReadVocXmlLenient(ReadFile(xml), taxonomy, issues);
    } catch (const Error& e) {
      add(FindingKind::kMalformedXml, e.what());
      continue;
    }
    for (const auto& issue : issues) {
      add(issue.code == ErrorCode::kUnknownLabel ? FindingKind::kUnknownLabel
                                                 : FindingKind::kBoxOutOfBounds,
          issue.message);
    }
    if (ann.objects.empty() && issues.empty()) add(FindingKind::kEmptyAnnotation, "no objects");

    auto image = images.find(stem);
    if (image == images.end()) {
      add(FindingKind::kMissingImage, "no image file with stem '" + stem + "'");
      continue;
    }
    paired[stem] = true;
    if (probe) {
      const auto size = probe(image->second);
      if (!size) {
        add(FindingKind::kUnreadableImage, image->second.filename().string() + " cannot be decoded");
      } else if (size->first != ann.width || size->second != ann.height) {
        add(FindingKind::kSizeMismatch,
            "annotation says " + std::to_string(ann.width) + "x" + std::to_string(ann.height) +
                ", image is " + std::to_string(size->first) + "x" + std::to_string(size->second));
      }
    }
  }
  for (const auto& [stem, path] : images) {
    if (!paired.count(stem)) {
      report.findings.push_back(Finding{path.filename().string(), FindingKind::kMissingAnnotation,
                                        "no annotation file '" + stem + ".xml'"});
    }
  }
  return report;
}

}  // namespace weedkit::io
