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

#include <cmath>

#include "oracles/brute_force.hpp"
#include "support/test_support.hpp"
#include "weedkit/error.hpp"
#include "weedkit/pixel_pipeline.hpp"
#include "weedkit/voc.hpp"

namespace weedkit::pipeline {
namespace {

using weedkit::testing::Gen;

oracle::Grid ToGrid(const BinaryMask& m) {
  oracle::Grid g{m.width(), m.height(), {}};
  for (auto b : m.raw()) g.v.push_back(b);
  return g;
}

BinaryMask FromPoints(int w, int h, std::initializer_list<std::pair<int, int>> points) {
  BinaryMask m(w, h);
  for (auto [x, y] : points) m.set(x, y, true);
  return m;
}

// Inverse hexcone conversion, used to check round trips.
std::array<double, 3> HsvToRgb(double h, double s, double v) {
  const double h6 = h * 6.0;
  const int i = static_cast<int>(std::floor(h6)) % 6;
  const double f = h6 - std::floor(h6);
  const double p = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
  switch (i) {
    case 0: return {v, t, p};
    case 1: return {q, v, p};
    case 2: return {p, v, t};
    case 3: return {p, q, v};
    case 4: return {t, p, v};
    default: return {v, p, q};
  }
}

TEST(Normalize, DividesBy255) {
  RasterImage img(3, 1);
  img.set(0, 0, 255, 0, 128);
  img.set(1, 0, 1, 2, 3);
  const auto n = Normalize(img);
  EXPECT_EQ(n.data[0], 1.0f);
  EXPECT_EQ(n.data[1], 0.0f);
  // 128/255 = 0.50196078431372549...
  EXPECT_NEAR(n.data[2], 0.5019607843137254902, 1e-7);
  EXPECT_EQ(n.data[2], static_cast<float>(128.0 / 255.0));
}

TEST(Normalize, PreservesOrder) {
  RasterImage img(256, 1);
  for (int v = 0; v < 256; ++v) img.set(v, 0, static_cast<std::uint8_t>(v), 0, 0);
  const auto n = Normalize(img);
  for (int v = 1; v < 256; ++v) EXPECT_LT(n.data[(v - 1) * 3], n.data[v * 3]);
}

TEST(RgbToHsv, Examples) {
  const Hsv green = RgbToHsv(0.0f, 1.0f, 0.0f);
  EXPECT_NEAR(green.h, 1.0 / 3.0, 1e-7);
  EXPECT_EQ(green.s, 1.0f);
  EXPECT_EQ(green.v, 1.0f);
  const Hsv gray = RgbToHsv(0.5f, 0.5f, 0.5f);
  EXPECT_EQ(gray.h, 0.0f);
  EXPECT_EQ(gray.s, 0.0f);
  EXPECT_EQ(gray.v, 0.5f);
  const Hsv chartreuse = RgbToHsv(0.5f, 1.0f, 0.0f);
  EXPECT_NEAR(chartreuse.h, 0.25, 1e-7);
  EXPECT_EQ(chartreuse.s, 1.0f);
  EXPECT_EQ(chartreuse.v, 1.0f);
  const Hsv black = RgbToHsv(0.0f, 0.0f, 0.0f);
  EXPECT_EQ(black.s, 0.0f);
  EXPECT_EQ(black.v, 0.0f);
}

TEST(RgbToHsv, InverseRoundTripOnRandomPixels) {
  Gen gen(11);
  for (int i = 0; i < 10000; ++i) {
    const float r = static_cast<float>(gen.Int(0, 255)) / 255.0f;
    const float g = static_cast<float>(gen.Int(0, 255)) / 255.0f;
    const float b = static_cast<float>(gen.Int(0, 255)) / 255.0f;
    const Hsv hsv = RgbToHsv(r, g, b);
    ASSERT_GE(hsv.h, 0.0f);
    ASSERT_LT(hsv.h, 1.0f);
    EXPECT_EQ(hsv.v, std::max({r, g, b}));
    const auto back = HsvToRgb(hsv.h, hsv.s, hsv.v);
    EXPECT_NEAR(back[0], r, 1e-6);
    EXPECT_NEAR(back[1], g, 1e-6);
    EXPECT_NEAR(back[2], b, 1e-6);
  }
}

TEST(GreenMask, ThresholdExamples) {
  HsvImage img{4, 1, {{1.0f / 3.0f, 1.0f, 1.0f}, {0.0f, 0.0f, 0.5f},
                      {20.0f / 360.0f, 0.9f, 1.0f}, {30.0f / 360.0f, 0.21f, 0.1f}}};
  const auto m = GreenMask(img, MaskConfig{});
  EXPECT_TRUE(m.at(0, 0));
  EXPECT_FALSE(m.at(1, 0));
  EXPECT_FALSE(m.at(2, 0));
  EXPECT_TRUE(m.at(3, 0));
}

TEST(GreenMask, EndpointsInclusive) {
  MaskConfig cfg;
  HsvImage img{3, 1, {{static_cast<float>(cfg.hue_min), 0.2f, 1.0f},
                      {static_cast<float>(cfg.hue_max), 0.5f, 1.0f},
                      {static_cast<float>(cfg.hue_max) + 1e-6f, 0.5f, 1.0f}}};
  const auto m = GreenMask(img, cfg);
  EXPECT_TRUE(m.at(0, 0));
  EXPECT_TRUE(m.at(1, 0));
  EXPECT_FALSE(m.at(2, 0));
}

TEST(GreenMask, MonotoneInSaturationFloor) {
  Gen gen(12);
  HsvImage img{64, 64, {}};
  for (int i = 0; i < 64 * 64; ++i) {
    img.data.push_back({static_cast<float>(gen.Real(0, 1)), static_cast<float>(gen.Real(0, 1)), 1.0f});
  }
  MaskConfig cfg;
  cfg.sat_min = 0.0;
  std::size_t prev = GreenMask(img, cfg).count();
  for (double s = 0.05; s <= 1.0; s += 0.05) {
    cfg.sat_min = s;
    const auto m = GreenMask(img, cfg);
    EXPECT_LE(m.count(), prev);
    prev = m.count();
  }
}

TEST(Morphology, AllBackgroundIsFixedPoint) {
  const BinaryMask empty(9, 7);
  EXPECT_EQ(MorphRefine(empty, MaskConfig{}), empty);
}

TEST(Morphology, IsolatedPixelRemoved) {
  const auto m = FromPoints(5, 5, {{2, 2}});
  EXPECT_EQ(MorphRefine(m, MaskConfig{}).count(), 0u);
}

TEST(Morphology, InteriorHoleFilled) {
  BinaryMask m(14, 14);
  for (int y = 2; y < 12; ++y) {
    for (int x = 2; x < 12; ++x) m.set(x, y, true);
  }
  BinaryMask solid = m;
  m.set(6, 6, false);
  const auto r = MorphRefine(m, MaskConfig{});
  EXPECT_TRUE(r.at(6, 6));
  EXPECT_EQ(r, solid);
}

TEST(Morphology, MatchesNaiveWindowScan) {
  Gen gen(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int w = gen.Int(1, 24), h = gen.Int(1, 24);
    const int k = 2 * gen.Int(0, 3) + 1;
    const auto m = gen.Mask(w, h, gen.Real(0.1, 0.9));
    const auto g = ToGrid(m);
    ASSERT_EQ(ToGrid(Erode(m, k)).v, oracle::Erode(g, k).v) << w << "x" << h << " k" << k;
    ASSERT_EQ(ToGrid(Dilate(m, k)).v, oracle::Dilate(g, k).v) << w << "x" << h << " k" << k;
    MaskConfig cfg;
    cfg.morph_kernel = k;
    ASSERT_EQ(ToGrid(MorphRefine(m, cfg)).v, oracle::Refine(g, k).v);
  }
}

TEST(Morphology, RefineIsIdempotent) {
  Gen gen(14);
  for (int trial = 0; trial < 500; ++trial) {
    MaskConfig cfg;
    cfg.morph_kernel = 2 * gen.Int(0, 2) + 1;
    const auto once = MorphRefine(gen.Mask(gen.Int(1, 20), gen.Int(1, 20), gen.Real(0.2, 0.8)), cfg);
    ASSERT_EQ(MorphRefine(once, cfg), once) << "trial " << trial;
  }
}

TEST(ConnectedComponents, Examples) {
  EXPECT_TRUE(ConnectedComponents(BinaryMask(6, 6), Connectivity::kEight).regions.empty());
  const auto two = ConnectedComponents(FromPoints(5, 5, {{0, 0}, {0, 1}, {4, 4}}), Connectivity::kFour);
  ASSERT_EQ(two.regions.size(), 2u);
  EXPECT_EQ(two.regions[0].pixel_count, 2);
  EXPECT_EQ(two.regions[1].box, (BoundingBox{4, 4, 4, 4}));
  const auto diag = FromPoints(5, 5, {{0, 0}, {1, 1}});
  EXPECT_EQ(ConnectedComponents(diag, Connectivity::kFour).regions.size(), 2u);
  EXPECT_EQ(ConnectedComponents(diag, Connectivity::kEight).regions.size(), 1u);
}

TEST(ConnectedComponents, MatchesUnionFind) {
  Gen gen(15);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = gen.Mask(gen.Int(1, 30), gen.Int(1, 30), gen.Real(0.1, 0.7));
    for (bool eight : {false, true}) {
      const auto got = ConnectedComponents(m, eight ? Connectivity::kEight : Connectivity::kFour);
      const auto want = oracle::Components(ToGrid(m), eight);
      ASSERT_EQ(got.regions.size(), want.size());
      for (std::size_t i = 0; i < want.size(); ++i) {
        EXPECT_EQ(got.regions[i].pixel_count, want[i].count);
        EXPECT_EQ(got.regions[i].box,
                  (BoundingBox{want[i].xmin, want[i].ymin, want[i].xmax, want[i].ymax}));
      }
      // Every foreground pixel has exactly one id in 1..K, background 0.
      for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
          const int id = got.at(x, y);
          if (m.at(x, y)) {
            ASSERT_GE(id, 1);
            ASSERT_LE(id, static_cast<int>(got.regions.size()));
          } else {
            ASSERT_EQ(id, 0);
          }
        }
      }
    }
  }
}

TEST(ConnectedComponents, EightNeverExceedsFour) {
  Gen gen(16);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = gen.Mask(gen.Int(1, 25), gen.Int(1, 25), gen.Real(0.1, 0.7));
    EXPECT_LE(ConnectedComponents(m, Connectivity::kEight).regions.size(),
              ConnectedComponents(m, Connectivity::kFour).regions.size());
  }
}

TEST(RegionsToBoxes, BoxUsesColumnsForX) {
  BinaryMask m(12, 12);
  for (int y = 2; y <= 5; ++y) {
    for (int x = 3; x <= 9; ++x) m.set(x, y, true);
  }
  MaskConfig cfg;
  cfg.min_area_fraction = 0.0;
  const auto boxes = RegionsToBoxes(ConnectedComponents(m, Connectivity::kEight), cfg);
  ASSERT_EQ(boxes.size(), 1u);
  EXPECT_EQ(boxes[0], (BoundingBox{3, 2, 9, 5}));
}

TEST(RegionsToBoxes, AreaFloorAndOrdering) {
  BinaryMask m(40, 40);
  m.set(0, 0, true);  // 1 pixel
  for (int y = 10; y < 15; ++y) {
    for (int x = 10; x < 20; ++x) m.set(x, y, true);  // 50 pixels
  }
  for (int y = 20; y < 30; ++y) {
    for (int x = 20; x < 30; ++x) m.set(x, y, true);  // 100 pixels
  }
  MaskConfig cfg;
  cfg.min_area_fraction = 2.0 / 1600.0;
  const auto boxes = RegionsToBoxes(ConnectedComponents(m, Connectivity::kEight), cfg);
  ASSERT_EQ(boxes.size(), 2u);
  EXPECT_EQ(boxes[0], (BoundingBox{20, 20, 29, 29}));
  EXPECT_EQ(boxes[1], (BoundingBox{10, 10, 19, 14}));
  cfg.min_area_fraction = 1.0;
  EXPECT_TRUE(RegionsToBoxes(ConnectedComponents(m, Connectivity::kEight), cfg).empty());
}

TEST(RegionsToBoxes, BoxesAreTight) {
  Gen gen(17);
  MaskConfig cfg;
  cfg.min_area_fraction = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = gen.Mask(gen.Int(2, 30), gen.Int(2, 30), 0.3);
    const auto regions = ConnectedComponents(m, Connectivity::kEight);
    for (std::size_t id = 1; id <= regions.regions.size(); ++id) {
      const auto& b = regions.regions[id - 1].box;
      bool left = false, right = false, top = false, bottom = false;
      for (int y = b.ymin; y <= b.ymax; ++y) {
        for (int x = b.xmin; x <= b.xmax; ++x) {
          if (regions.at(x, y) != static_cast<int>(id)) continue;
          left |= x == b.xmin;
          right |= x == b.xmax;
          top |= y == b.ymin;
          bottom |= y == b.ymax;
        }
      }
      EXPECT_TRUE(left && right && top && bottom);
    }
  }
}

TEST(AutoAnnotate, GreenBlockYieldsExactBox) {
  const auto img = weedkit::testing::GreenBlockImage(120, 100, 10, 10, 50, 80);
  const ClassLabel label{"ABUTH", 3};
  const auto ann = AutoAnnotate(img, label, MaskConfig{}, "block.png");
  ASSERT_EQ(ann.objects.size(), 1u);
  EXPECT_EQ(ann.objects[0].box, (BoundingBox{10, 10, 50, 80}));
  EXPECT_EQ(ann.objects[0].label, label);
  EXPECT_EQ(ann.image_id, "block");
  EXPECT_EQ(ann.width, 120);
  EXPECT_EQ(ann.height, 100);
  // Deterministic down to the serialized bytes.
  const auto again = AutoAnnotate(img, label, MaskConfig{}, "block.png");
  EXPECT_EQ(io::WriteVocXml(ann), io::WriteVocXml(again));
}

TEST(AutoAnnotate, BlackImageHasNoRegions) {
  const RasterImage black(64, 48);
  try {
    AutoAnnotate(black, {"ABUTH", 1}, MaskConfig{});
    FAIL() << "expected NoRegionsFound";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoRegionsFound);
  }
}

TEST(MaskConfig, Validation) {
  auto bad = [](auto mutate) {
    MaskConfig c;
    mutate(c);
    EXPECT_THROW(c.Validate(), Error);
  };
  bad([](MaskConfig& c) { c.hue_min = 0.5; c.hue_max = 0.4; });
  bad([](MaskConfig& c) { c.hue_max = 1.0; });
  bad([](MaskConfig& c) { c.sat_min = 1.5; });
  bad([](MaskConfig& c) { c.morph_kernel = 4; });
  bad([](MaskConfig& c) { c.morph_kernel = 0; });
  bad([](MaskConfig& c) { c.min_area_fraction = -0.1; });
  EXPECT_NO_THROW(MaskConfig{}.Validate());
}

}  // namespace
}  // namespace weedkit::pipeline
