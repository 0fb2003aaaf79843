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
#include "weedkit/taxonomy.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "weedkit/error.hpp"

namespace weedkit {
namespace {

bool IsSpeciesCode(std::string_view code) {
  return code.size() == 5 &&
         std::all_of(code.begin(), code.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

std::vector<int> WeekRange(int first, int last) {
  std::vector<int> weeks;
  for (int w = first; w <= last; ++w) weeks.push_back(w);
  return weeks;
}

std::string_view Trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(ws);
  return s.substr(begin, end - begin + 1);
}

std::optional<int> ParseInt(std::string_view s) {
  int value = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || s.empty()) return std::nullopt;
  return value;
}

[[noreturn]] void ConfigError(int line_no, const std::string& what) {
  throw Error(ErrorCode::kMalformedTaxonomy,
              "taxonomy line " + std::to_string(line_no) + ": " + what);
}

// "1-11", "3-11", "1,2,5-7".
std::vector<int> ParseWeeks(std::string_view text, int line_no) {
  std::vector<int> weeks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = Trim(text.substr(pos, comma - pos));
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      const auto w = ParseInt(item);
      if (!w) ConfigError(line_no, "bad week '" + std::string(item) + "'");
      weeks.push_back(*w);
    } else {
      const auto lo = ParseInt(Trim(item.substr(0, dash)));
      const auto hi = ParseInt(Trim(item.substr(dash + 1)));
      if (!lo || !hi || *lo > *hi) {
        ConfigError(line_no, "bad week range '" + std::string(item) + "'");
      }
      for (int w = *lo; w <= *hi; ++w) weeks.push_back(w);
    }
    pos = comma + 1;
  }
  return weeks;
}

std::string FormatWeeks(const std::vector<int>& weeks) {
  std::string out;
  std::size_t i = 0;
  while (i < weeks.size()) {
    std::size_t j = i;
    while (j + 1 < weeks.size() && weeks[j + 1] == weeks[j] + 1) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(weeks[i]);
    if (j > i) out += '-' + std::to_string(weeks[j]);
    i = j + 1;
  }
  return out;
}

}  // namespace

bool Species::IsActive(int week) const {
  return std::binary_search(active_weeks.begin(), active_weeks.end(), week);
}

std::string ClassLabel::ToString() const {
  return code + "_week_" + std::to_string(week);
}

Taxonomy::Taxonomy(std::vector<Species> species, std::map<std::string, std::string> aliases)
    : species_(std::move(species)), aliases_(std::move(aliases)) {
  for (std::size_t i = 0; i < species_.size(); ++i) {
    auto& s = species_[i];
    if (!IsSpeciesCode(s.code)) {
      throw Error(ErrorCode::kMalformedTaxonomy, "species code '" + s.code +
                                                     "' is not 5 uppercase letters");
    }
    std::sort(s.active_weeks.begin(), s.active_weeks.end());
    s.active_weeks.erase(std::unique(s.active_weeks.begin(), s.active_weeks.end()),
                         s.active_weeks.end());
    if (s.active_weeks.empty() || s.active_weeks.front() < kMinWeek ||
        s.active_weeks.back() > kMaxWeek) {
      throw Error(ErrorCode::kMalformedTaxonomy,
                  "species " + s.code + " needs active weeks within 1..11");
    }
    if (!species_index_.emplace(s.code, i).second) {
      throw Error(ErrorCode::kMalformedTaxonomy, "duplicate species code " + s.code);
    }
  }
  for (const auto& [alias, target] : aliases_) {
    if (!IsSpeciesCode(alias) || species_index_.count(alias) != 0 ||
        species_index_.count(target) == 0) {
      throw Error(ErrorCode::kMalformedTaxonomy, "bad alias " + alias + " -> " + target);
    }
  }
  for (const auto& s : species_) {
    for (int week : s.active_weeks) {
      class_ids_.emplace(ClassLabel{s.code, week}, static_cast<int>(classes_.size()));
      classes_.push_back(ClassLabel{s.code, week});
    }
  }
}

Taxonomy Taxonomy::Default() {
  const auto all = WeekRange(1, 11);
  std::vector<Species> species = {
      {"ABUTH", "Abutilon theophrasti Medik.", "Velvetleaf", "Malvaceae", all},
      {"AMAPA", "Amaranthus palmeri S. Watson.", "Palmer Amaranth", "Amaranthaceae", all},
      {"AMARE", "Amaranthus retroflexus L.", "Redroot Pigweed", "Amaranthaceae", all},
      {"AMATU", "Amaranthus tuberculatus (Moq.) Sauer.", "Water Hemp", "Amaranthaceae", all},
      {"AMBEL", "Ambrosia artemisiifolia L.", "Common Ragweed", "Asteraceae", all},
      {"CHEAL", "Chenopodium album L.", "Common Lambsquarter", "Chenopodiaceae", all},
      {"CYPES", "Cyperus esculentus L.", "Yellow Nutsedge", "Cyperaceae", all},
      {"DIGSA", "Digitaria sanguinalis (L.) Scop.", "Large Crabgrass", "Poaceae", all},
      {"ECHCG", "Echinochloa crus-galli (L.) P. Beauv.", "Barnyard Grass", "Poaceae", all},
      {"ERICA", "Erigeron canadensis L.", "Horse Weed", "Asteraceae", all},
      {"PANDI", "Panicum dichotomiflorum Michx.", "Fall Panicum", "Poaceae", all},
      {"SETFA", "Setaria faberi Herrm.", "Giant Foxtail", "Poaceae", all},
      {"SETPU", "Setaria pumila (Poir.) Roem.", "Yellow Foxtail", "Poaceae", all},
      {"SIDSP", "Sida spinosa L.", "Prickly Sida", "Malvaceae", all},
      // Did not emerge before week 3.
      {"SORHA", "Sorghum halepense (L.) Pers.", "Johnson Grass", "Poaceae", WeekRange(3, 11)},
      {"SORVU", "Sorghum bicolor (L.) Moench.", "Shatter Cane", "Poaceae", all},
  };
  return Taxonomy(std::move(species), {{"AMATA", "AMATU"}});
}

Taxonomy Taxonomy::FromConfig(std::string_view text) {
  std::vector<Species> species;
  std::map<std::string, std::string> aliases;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = Trim(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = Trim(line.substr(0, hash));
    }
    if (line.empty()) continue;

    if (line.rfind("alias", 0) == 0 && line.find('|') == std::string_view::npos) {
      std::istringstream words{std::string(line)};
      std::string keyword, alias, target, extra;
      words >> keyword >> alias >> target;
      if (keyword != "alias" || alias.empty() || target.empty() || (words >> extra)) {
        ConfigError(line_no, "expected 'alias <ALIAS> <CODE>'");
      }
      aliases[alias] = target;
      continue;
    }

    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const auto bar = line.find('|', pos);
      fields.push_back(Trim(line.substr(pos, bar == std::string_view::npos ? line.npos : bar - pos)));
      if (bar == std::string_view::npos) break;
      pos = bar + 1;
    }
    if (fields.size() != 5) {
      ConfigError(line_no, "expected 5 '|'-separated fields, got " + std::to_string(fields.size()));
    }
    species.push_back(Species{std::string(fields[0]), std::string(fields[1]),
                              std::string(fields[2]), std::string(fields[3]),
                              ParseWeeks(fields[4], line_no)});
  }
  return Taxonomy(std::move(species), std::move(aliases));
}

Taxonomy Taxonomy::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open taxonomy file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return FromConfig(buf.str());
}

std::string Taxonomy::ToConfig() const {
  std::string out = "# code | scientific name | common name | family | active weeks\n";
  for (const auto& s : species_) {
    out += s.code + " | " + s.scientific_name + " | " + s.common_name + " | " + s.family +
           " | " + FormatWeeks(s.active_weeks) + "\n";
  }
  for (const auto& [alias, target] : aliases_) out += "alias " + alias + " " + target + "\n";
  return out;
}

const Species* Taxonomy::FindSpecies(std::string_view code) const {
  std::string key(code);
  if (auto a = aliases_.find(key); a != aliases_.end()) key = a->second;
  auto it = species_index_.find(key);
  return it == species_index_.end() ? nullptr : &species_[it->second];
}

std::optional<int> Taxonomy::ClassId(const ClassLabel& label) const {
  auto it = class_ids_.find(label);
  if (it == class_ids_.end()) return std::nullopt;
  return it->second;
}

ClassLabel Taxonomy::MakeLabel(std::string_view code, int week) const {
  const Species* s = FindSpecies(code);
  if (s == nullptr) {
    throw Error(ErrorCode::kUnknownSpecies, "unknown species code '" + std::string(code) + "'");
  }
  if (!s->IsActive(week)) {
    throw Error(ErrorCode::kInactiveWeek,
                s->code + " has no class for week " + std::to_string(week));
  }
  return ClassLabel{s->code, week};
}

ClassLabel Taxonomy::ParseLabel(std::string_view text) const {
  auto malformed = [&] {
    return Error(ErrorCode::kMalformedLabel,
                 "label '" + std::string(text) + "' is not of the form CODE_week_N");
  };
  if (text.size() < 12) throw malformed();
  const auto code = text.substr(0, 5);
  const auto sep = text.substr(5, 6);
  if (!IsSpeciesCode(code) || (sep != "_week_" && sep != "_Week_")) throw malformed();
  const auto digits = text.substr(11);
  if (digits.empty() || digits.front() == '0' || digits.size() > 3) throw malformed();
  const auto week = ParseInt(digits);
  if (!week) throw malformed();
  return MakeLabel(code, *week);
}

}  // namespace weedkit
