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
#include "weedkit/voc.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "weedkit/file_util.hpp"

namespace weedkit::io {
namespace pt = boost::property_tree;

namespace {

std::string Escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Trimmed(const std::string& s) {
  const auto* ws = " \t\r\n";
  const auto begin = s.find_first_not_of(ws);
  if (begin == std::string::npos) return {};
  return s.substr(begin, s.find_last_not_of(ws) - begin + 1);
}

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedXml, "malformed VOC XML: " + what);
}

// Integers, or reals with an integral value ("12.0"), as some tools write.
int ParseCoordinate(const pt::ptree& node, const std::string& key) {
  const auto child = node.get_optional<std::string>(key);
  if (!child) Malformed("missing <" + key + ">");
  const std::string text = Trimmed(*child);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    Malformed("<" + key + "> is not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value) || value != std::floor(value) ||
      std::fabs(value) > std::numeric_limits<int>::max()) {
    Malformed("<" + key + "> is not an integer: '" + text + "'");
  }
  return static_cast<int>(value);
}

int ParseFlag(const pt::ptree& node, const std::string& key) {
  if (!node.get_child_optional(key)) return 0;
  const int v = ParseCoordinate(node, key);
  if (v != 0 && v != 1) Malformed("<" + key + "> must be 0 or 1");
  return v;
}

Annotation Parse(std::string_view bytes, const Taxonomy& taxonomy, std::vector<VocIssue>* issues) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(bytes)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    Malformed(e.message() + " at line " + std::to_string(e.line()));
  }
  const auto root = tree.get_child_optional("annotation");
  if (!root) Malformed("missing <annotation> root");

  Annotation ann;
  ann.folder = Trimmed(root->get<std::string>("folder", ""));
  ann.filename = Trimmed(root->get<std::string>("filename", ""));
  ann.image_id = std::filesystem::path(ann.filename).stem().string();
  const auto size = root->get_child_optional("size");
  if (!size) Malformed("missing <size>");
  ann.width = ParseCoordinate(*size, "width");
  ann.height = ParseCoordinate(*size, "height");
  ann.depth = size->get_child_optional("depth") ? ParseCoordinate(*size, "depth") : 3;
  if (ann.width <= 0 || ann.height <= 0) Malformed("image size must be positive");

  int index = 0;
  for (const auto& [tag, node] : *root) {
    if (tag != "object") continue;
    const int object_index = index++;
    AnnotatedObject obj;
    const std::string name = Trimmed(node.get<std::string>("name", ""));
    try {
      obj.label = taxonomy.ParseLabel(name);
    } catch (const Error& e) {
      const std::string msg = "object " + std::to_string(object_index) + ": unknown label '" +
                              name + "' (" + e.what() + ")";
      if (issues == nullptr) throw Error(ErrorCode::kUnknownLabel, msg);
      issues->push_back({ErrorCode::kUnknownLabel, msg});
      continue;
    }
    obj.pose = Trimmed(node.get<std::string>("pose", "Unspecified"));
    obj.truncated = ParseFlag(node, "truncated");
    obj.difficult = ParseFlag(node, "difficult");
    const auto bndbox = node.get_child_optional("bndbox");
    if (!bndbox) Malformed("object " + std::to_string(object_index) + " has no <bndbox>");
    obj.box = BoundingBox{ParseCoordinate(*bndbox, "xmin") - 1, ParseCoordinate(*bndbox, "ymin") - 1,
                          ParseCoordinate(*bndbox, "xmax") - 1, ParseCoordinate(*bndbox, "ymax") - 1};
    if (!obj.box.fits(ann.width, ann.height)) {
      std::ostringstream msg;
      msg << "object " << object_index << " (" << name << "): box " << obj.box.xmin + 1 << ","
          << obj.box.ymin + 1 << "," << obj.box.xmax + 1 << "," << obj.box.ymax + 1
          << " (1-based) is outside a " << ann.width << "x" << ann.height << " image";
      if (issues == nullptr) throw Error(ErrorCode::kBoxOutOfBounds, msg.str());
      issues->push_back({ErrorCode::kBoxOutOfBounds, msg.str()});
      continue;
    }
    ann.objects.push_back(std::move(obj));
  }
  return ann;
}

}  // namespace

std::string WriteVocXml(const Annotation& a) {
  std::ostringstream out;
  out << "<annotation>\n"
      << "\t<folder>" << Escape(a.folder) << "</folder>\n"
      << "\t<filename>" << Escape(a.filename) << "</filename>\n"
      << "\t<size>\n"
      << "\t\t<width>" << a.width << "</width>\n"
      << "\t\t<height>" << a.height << "</height>\n"
      << "\t\t<depth>" << a.depth << "</depth>\n"
      << "\t</size>\n"
      << "\t<segmented>0</segmented>\n";
  for (const auto& obj : a.objects) {
    out << "\t<object>\n"
        << "\t\t<name>" << Escape(obj.label.ToString()) << "</name>\n"
        << "\t\t<pose>" << Escape(obj.pose) << "</pose>\n"
        << "\t\t<truncated>" << obj.truncated << "</truncated>\n"
        << "\t\t<difficult>" << obj.difficult << "</difficult>\n"
        << "\t\t<bndbox>\n"
        << "\t\t\t<xmin>" << obj.box.xmin + 1 << "</xmin>\n"
        << "\t\t\t<ymin>" << obj.box.ymin + 1 << "</ymin>\n"
        << "\t\t\t<xmax>" << obj.box.xmax + 1 << "</xmax>\n"
        << "\t\t\t<ymax>" << obj.box.ymax + 1 << "</ymax>\n"
        << "\t\t</bndbox>\n"
        << "\t</object>\n";
  }
  out << "</annotation>\n";
  return std::move(out).str();
}

Annotation ReadVocXml(std::string_view bytes, const Taxonomy& taxonomy) {
  return Parse(bytes, taxonomy, nullptr);
}

Annotation ReadVocXmlLenient(std::string_view bytes, const Taxonomy& taxonomy,
                             std::vector<VocIssue>& issues) {
  return Parse(bytes, taxonomy, &issues);
}

Annotation ReadVocFile(const std::filesystem::path& path, const Taxonomy& taxonomy) {
  Annotation ann;
  try {
    ann = ReadVocXml(ReadFile(path), taxonomy);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoError) throw;
    throw Error(e.code(), path.filename().string() + ": " + e.what());
  }
  ann.image_id = path.stem().string();
  return ann;
}

void WriteVocFile(const std::filesystem::path& path, const Annotation& annotation) {
  WriteFileAtomic(path, WriteVocXml(annotation));
}

}  // namespace weedkit::io
