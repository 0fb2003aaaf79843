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

#include <sstream>

#include "support/test_support.hpp"
#include "weedkit/predictions.hpp"

namespace weedkit::io {
namespace {

using testing::CodeOf;

std::vector<Detection> Parse(const std::string& text) {
  std::istringstream in(text);
  return ReadPredictions(in, Taxonomy::Default());
}

TEST(Predictions, ParsesDocumentedLine) {
  const auto dets = Parse(
      R"({"image_id":"img_001","label":"ABUTH_week_2","xmin":10,"ymin":12,"xmax":90,"ymax":140,"score":0.986})"
      "\n");
  ASSERT_EQ(dets.size(), 1u);
  EXPECT_EQ(dets[0].image_id, "img_001");
  EXPECT_EQ(dets[0].label.ToString(), "ABUTH_week_2");
  EXPECT_EQ(dets[0].box, (BoundingBox{10, 12, 90, 140}));
  EXPECT_DOUBLE_EQ(dets[0].score, 0.986);
}

TEST(Predictions, EmptyAndBlankInputIsEmpty) {
  EXPECT_TRUE(Parse("").empty());
  EXPECT_TRUE(Parse("\n  \n\t\r\n").empty());
}

TEST(Predictions, FormatRoundTrips) {
  const auto tax = Taxonomy::Default();
  testing::Gen gen(11);
  std::string text;
  std::vector<Detection> expected;
  for (int i = 0; i < 500; ++i) {
    Detection d{"img_" + std::to_string(i), tax.Label(gen.Int(0, 173)), gen.Box(4000, 3000),
                gen.Real(0.0, 1.0)};
    text += FormatPrediction(d) + "\n";
    expected.push_back(d);
  }
  const auto back = Parse(text);
  ASSERT_EQ(back.size(), expected.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].image_id, expected[i].image_id);
    EXPECT_EQ(back[i].label, expected[i].label);
    EXPECT_EQ(back[i].box, expected[i].box);
    EXPECT_EQ(back[i].score, expected[i].score);
  }
}

TEST(Predictions, ScoreOutsideUnitIntervalIsRejected) {
  const std::string line =
      R"({"image_id":"a","label":"ABUTH_week_2","xmin":1,"ymin":1,"xmax":2,"ymax":2,"score":1.5})";
  EXPECT_EQ(CodeOf([&] { Parse(line); }), ErrorCode::kScoreOutOfRange);
  const std::string negative =
      R"({"image_id":"a","label":"ABUTH_week_2","xmin":1,"ymin":1,"xmax":2,"ymax":2,"score":-0.1})";
  EXPECT_EQ(CodeOf([&] { Parse(negative); }), ErrorCode::kScoreOutOfRange);
}

TEST(Predictions, ErrorsNameTheLine) {
  const std::string good =
      R"({"image_id":"a","label":"ABUTH_week_2","xmin":1,"ymin":1,"xmax":2,"ymax":2,"score":0.5})";
  const std::string text = good + "\n\n" + good + "\n{not json\n";
  try {
    Parse(text);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedRecord);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(Predictions, RecordShapeChecks) {
  const auto bad = [](const std::string& line) { return CodeOf([&] { Parse(line); }); };
  EXPECT_EQ(bad(R"([1,2,3])"), ErrorCode::kMalformedRecord);
  EXPECT_EQ(bad(R"({"label":"ABUTH_week_2","xmin":1,"ymin":1,"xmax":2,"ymax":2,"score":0.5})"),
            ErrorCode::kMalformedRecord);
  EXPECT_EQ(bad(R"({"image_id":"a","label":"ABUTH_week_2","xmin":1.5,"ymin":1,"xmax":2,"ymax":2,"score":0.5})"),
            ErrorCode::kMalformedRecord);
  EXPECT_EQ(bad(R"({"image_id":"a","label":"ABUTH_week_2","xmin":3,"ymin":1,"xmax":2,"ymax":2,"score":0.5})"),
            ErrorCode::kMalformedRecord);
  EXPECT_EQ(bad(R"({"image_id":"a","label":"ABUTH_week_2","xmin":-1,"ymin":1,"xmax":2,"ymax":2,"score":0.5})"),
            ErrorCode::kMalformedRecord);
  EXPECT_EQ(bad(R"({"image_id":"a","label":"SORHA_week_1","xmin":1,"ymin":1,"xmax":2,"ymax":2,"score":0.5})"),
            ErrorCode::kUnknownLabel);
}

}  // namespace
}  // namespace weedkit::io
