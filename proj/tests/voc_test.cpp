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
#include <gtest/gtest.h>

#include <string>

#include "support/test_support.hpp"
#include "weedkit/file_util.hpp"
#include "weedkit/voc.hpp"

namespace weedkit::io {
namespace {

using testing::CodeOf;

Annotation OneObject(const Taxonomy& tax) {
  Annotation ann;
  ann.image_id = "frame_0001";
  ann.folder = "week8";
  ann.filename = "frame_0001.png";
  ann.width = 640;
  ann.height = 480;
  ann.objects.push_back({tax.ParseLabel("AMBEL_week_8"), {0, 0, 9, 9}});
  return ann;
}

constexpr const char* kOneObjectXml =
    "<annotation>\n"
    "\t<folder>week8</folder>\n"
    "\t<filename>frame_0001.png</filename>\n"
    "\t<size>\n"
    "\t\t<width>640</width>\n"
    "\t\t<height>480</height>\n"
    "\t\t<depth>3</depth>\n"
    "\t</size>\n"
    "\t<segmented>0</segmented>\n"
    "\t<object>\n"
    "\t\t<name>AMBEL_week_8</name>\n"
    "\t\t<pose>Unspecified</pose>\n"
    "\t\t<truncated>0</truncated>\n"
    "\t\t<difficult>0</difficult>\n"
    "\t\t<bndbox>\n"
    "\t\t\t<xmin>1</xmin>\n"
    "\t\t\t<ymin>1</ymin>\n"
    "\t\t\t<xmax>10</xmax>\n"
    "\t\t\t<ymax>10</ymax>\n"
    "\t\t</bndbox>\n"
    "\t</object>\n"
    "</annotation>\n";

std::string WithBox(const std::string& name, int xmin, int ymin, int xmax, int ymax) {
  return "<annotation><filename>a.png</filename><size><width>20</width><height>20</height>"
         "<depth>3</depth></size><object><name>" + name + "</name><bndbox><xmin>" +
         std::to_string(xmin) + "</xmin><ymin>" + std::to_string(ymin) + "</ymin><xmax>" +
         std::to_string(xmax) + "</xmax><ymax>" + std::to_string(ymax) +
         "</ymax></bndbox></object></annotation>";
}

TEST(Voc, WritesOneBasedCoordinatesInFixedLayout) {
  const auto tax = Taxonomy::Default();
  EXPECT_EQ(WriteVocXml(OneObject(tax)), kOneObjectXml);
}

TEST(Voc, ReadsBackZeroBased) {
  const auto tax = Taxonomy::Default();
  const auto ann = ReadVocXml(kOneObjectXml, tax);
  ASSERT_EQ(ann.objects.size(), 1u);
  EXPECT_EQ(ann.objects[0].box, (BoundingBox{0, 0, 9, 9}));
  EXPECT_EQ(ann.objects[0].label.ToString(), "AMBEL_week_8");
  EXPECT_EQ(ann.image_id, "frame_0001");
  EXPECT_EQ(ann, OneObject(tax));
}

TEST(Voc, RandomAnnotationsRoundTrip) {
  const auto tax = Taxonomy::Default();
  testing::Gen gen(7);
  for (int i = 0; i < 1000; ++i) {
    const auto ann = gen.RandomAnnotation(tax);
    const std::string xml = WriteVocXml(ann);
    const auto back = ReadVocXml(xml, tax);
    ASSERT_EQ(back, ann) << xml;
    ASSERT_EQ(WriteVocXml(back), xml);
  }
}

TEST(Voc, EscapesMarkupCharacters) {
  const auto tax = Taxonomy::Default();
  auto ann = OneObject(tax);
  ann.folder = "a&b <c> \"d\" 'e'";
  ann.objects[0].pose = "<Left>";
  const std::string xml = WriteVocXml(ann);
  EXPECT_NE(xml.find("<folder>a&amp;b &lt;c&gt; &quot;d&quot; &apos;e&apos;</folder>"),
            std::string::npos);
  EXPECT_EQ(ReadVocXml(xml, tax), ann);
}

TEST(Voc, MissingOptionalElementsTakeDefaults) {
  const auto tax = Taxonomy::Default();
  const auto ann = ReadVocXml(WithBox("ABUTH_week_2", 3, 4, 5, 6), tax);
  ASSERT_EQ(ann.objects.size(), 1u);
  EXPECT_EQ(ann.objects[0].pose, "Unspecified");
  EXPECT_EQ(ann.objects[0].truncated, 0);
  EXPECT_EQ(ann.objects[0].difficult, 0);
  EXPECT_EQ(ann.objects[0].box, (BoundingBox{2, 3, 4, 5}));
  EXPECT_EQ(ann.image_id, "a");
}

TEST(Voc, AcceptsIntegralRealCoordinates) {
  const auto tax = Taxonomy::Default();
  std::string xml = WithBox("ABUTH_week_2", 3, 4, 12, 6);
  xml.replace(xml.find("<xmax>12</xmax>"), 15, "<xmax>12.0</xmax>");
  EXPECT_EQ(ReadVocXml(xml, tax).objects[0].box.xmax, 11);
}

TEST(Voc, RejectsFractionalCoordinates) {
  const auto tax = Taxonomy::Default();
  std::string xml = WithBox("ABUTH_week_2", 3, 4, 12, 6);
  xml.replace(xml.find("<xmax>12</xmax>"), 15, "<xmax>12.5</xmax>");
  EXPECT_EQ(CodeOf([&] { ReadVocXml(xml, tax); }), ErrorCode::kMalformedXml);
}

TEST(Voc, UnknownLabel) {
  const auto tax = Taxonomy::Default();
  EXPECT_EQ(CodeOf([&] { ReadVocXml(WithBox("XXXXX_week_3", 1, 1, 2, 2), tax); }),
            ErrorCode::kUnknownLabel);
  EXPECT_EQ(CodeOf([&] { ReadVocXml(WithBox("SORHA_week_1", 1, 1, 2, 2), tax); }),
            ErrorCode::kUnknownLabel);
}

TEST(Voc, InvertedOrOutsideBoxIsOutOfBounds) {
  const auto tax = Taxonomy::Default();
  EXPECT_EQ(CodeOf([&] { ReadVocXml(WithBox("ABUTH_week_2", 5, 1, 4, 2), tax); }),
            ErrorCode::kBoxOutOfBounds);
  EXPECT_EQ(CodeOf([&] { ReadVocXml(WithBox("ABUTH_week_2", 1, 1, 21, 2), tax); }),
            ErrorCode::kBoxOutOfBounds);
  EXPECT_EQ(CodeOf([&] { ReadVocXml(WithBox("ABUTH_week_2", 0, 1, 2, 2), tax); }),
            ErrorCode::kBoxOutOfBounds);
}

TEST(Voc, StructuralProblemsAreMalformed) {
  const auto tax = Taxonomy::Default();
  EXPECT_EQ(CodeOf([&] { ReadVocXml("<annotation><size>", tax); }), ErrorCode::kMalformedXml);
  EXPECT_EQ(CodeOf([&] { ReadVocXml("<annotation><filename>a.png</filename></annotation>", tax); }),
            ErrorCode::kMalformedXml);
  std::string bad_flag = WithBox("ABUTH_week_2", 1, 1, 2, 2);
  bad_flag.replace(bad_flag.find("<bndbox>"), 0, "<difficult>2</difficult>");
  EXPECT_EQ(CodeOf([&] { ReadVocXml(bad_flag, tax); }), ErrorCode::kMalformedXml);
}

TEST(Voc, LenientReaderCollectsEveryIssue) {
  const auto tax = Taxonomy::Default();
  const std::string object_ok =
      "<object><name>ABUTH_week_2</name><bndbox><xmin>1</xmin><ymin>1</ymin><xmax>3</xmax>"
      "<ymax>3</ymax></bndbox></object>";
  const std::string object_unknown =
      "<object><name>NOPE_week_2</name><bndbox><xmin>1</xmin><ymin>1</ymin><xmax>3</xmax>"
      "<ymax>3</ymax></bndbox></object>";
  const std::string object_outside =
      "<object><name>ABUTH_week_2</name><bndbox><xmin>1</xmin><ymin>1</ymin><xmax>30</xmax>"
      "<ymax>3</ymax></bndbox></object>";
  const std::string xml =
      "<annotation><filename>a.png</filename><size><width>20</width><height>20</height>"
      "<depth>3</depth></size>" + object_unknown + object_ok + object_outside + "</annotation>";
  std::vector<VocIssue> issues;
  const auto ann = ReadVocXmlLenient(xml, tax, issues);
  ASSERT_EQ(issues.size(), 2u);
  EXPECT_EQ(issues[0].code, ErrorCode::kUnknownLabel);
  EXPECT_EQ(issues[1].code, ErrorCode::kBoxOutOfBounds);
  ASSERT_EQ(ann.objects.size(), 1u);
  EXPECT_EQ(ann.objects[0].box, (BoundingBox{0, 0, 2, 2}));
}

TEST(Voc, FileImageIdIsTheFileStem) {
  const auto tax = Taxonomy::Default();
  testing::TempDir dir;
  auto ann = OneObject(tax);
  WriteVocFile(dir / "renamed.xml", ann);
  EXPECT_EQ(ReadFile(dir / "renamed.xml"), kOneObjectXml);
  const auto back = ReadVocFile(dir / "renamed.xml", tax);
  EXPECT_EQ(back.image_id, "renamed");
  EXPECT_EQ(back.filename, "frame_0001.png");
}

TEST(Voc, FileErrorsNameTheFile) {
  const auto tax = Taxonomy::Default();
  testing::TempDir dir;
  testing::WriteText(dir / "broken.xml", WithBox("XXXXX_week_3", 1, 1, 2, 2));
  try {
    ReadVocFile(dir / "broken.xml", tax);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownLabel);
    EXPECT_NE(std::string(e.what()).find("broken.xml"), std::string::npos);
  }
  EXPECT_EQ(CodeOf([&] { ReadVocFile(dir / "absent.xml", tax); }), ErrorCode::kIoError);
}

}  // namespace
}  // namespace weedkit::io
