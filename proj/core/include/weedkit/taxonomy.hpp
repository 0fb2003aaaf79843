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
#ifndef WEEDKIT_TAXONOMY_HPP_
#define WEEDKIT_TAXONOMY_HPP_

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace weedkit {

inline constexpr int kMinWeek = 1;
inline constexpr int kMaxWeek = 11;

struct Species {
  std::string code;  // exactly 5 uppercase ASCII letters
  std::string scientific_name;
  std::string common_name;
  std::string family;
  std::vector<int> active_weeks;  // sorted, unique, within [kMinWeek, kMaxWeek]

  bool IsActive(int week) const;
};

/// A growth-stage class: species code plus week number. The canonical text
/// form is "<CODE>_week_<N>" with N unpadded, e.g. "AMBEL_week_8".
struct ClassLabel {
  std::string code;
  int week = 0;

  std::string ToString() const;

  friend auto operator<=>(const ClassLabel&, const ClassLabel&) = default;
};

/// Species table plus a dense class index. Ids run species-major in table
/// order, then week-ascending, so two builds from the same table agree.
/// Immutable once constructed.
class Taxonomy {
 public:
  /// Validates every species and builds the class index. Throws
  /// Error(kMalformedTaxonomy) on bad codes, empty or out-of-range weeks,
  /// duplicate codes, or aliases that do not point at a known species.
  explicit Taxonomy(std::vector<Species> species,
                    std::map<std::string, std::string> aliases = {});

  /// The 16-species, 174-class greenhouse weed table.
  static Taxonomy Default();

  /// Parses the plain-text taxonomy format (see README "Taxonomy files").
  static Taxonomy FromConfig(std::string_view text);
  static Taxonomy Load(const std::filesystem::path& path);
  std::string ToConfig() const;

  const std::vector<Species>& species() const { return species_; }
  const std::vector<ClassLabel>& classes() const { return classes_; }
  const std::map<std::string, std::string>& aliases() const { return aliases_; }
  std::size_t num_classes() const { return classes_.size(); }

  /// Resolves aliases. Returns nullptr for unknown codes.
  const Species* FindSpecies(std::string_view code) const;

  /// Id of a label whose code is canonical (aliases are not resolved here).
  std::optional<int> ClassId(const ClassLabel& label) const;
  const ClassLabel& Label(int id) const { return classes_.at(static_cast<std::size_t>(id)); }

  /// Parses "<CODE>_week_<N>". Alias codes are mapped to their canonical
  /// species and the "Week" capitalisation used in some result tables is
  /// accepted. Throws kMalformedLabel, kUnknownSpecies or kInactiveWeek.
  ClassLabel ParseLabel(std::string_view text) const;

  /// Same checks as ParseLabel for an already split code and week.
  ClassLabel MakeLabel(std::string_view code, int week) const;

 private:
  std::vector<Species> species_;
  std::map<std::string, std::string> aliases_;
  std::vector<ClassLabel> classes_;
  std::unordered_map<std::string, std::size_t> species_index_;
  std::map<ClassLabel, int> class_ids_;
};

}  // namespace weedkit

#endif  // WEEDKIT_TAXONOMY_HPP_
