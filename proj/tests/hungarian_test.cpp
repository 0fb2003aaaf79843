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
#include <vector>

#include "oracles/brute_force.hpp"
#include "support/test_support.hpp"
#include "weedkit/losses.hpp"

namespace weedkit::losses {
namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

CostMatrix FromRows(const std::vector<std::vector<double>>& rows) {
  CostMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::vector<double>> RandomRows(testing::Gen& gen, int rows, int cols, bool small_ints) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(rows));
  for (auto& row : out) {
    for (int c = 0; c < cols; ++c) {
      row.push_back(small_ints ? gen.Int(0, 4) : std::round(gen.Real(-100, 100) * 8) / 8);
    }
  }
  return out;
}

TEST(Hungarian, WorkedExample) {
  const auto a = HungarianAssign(CostMatrix{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}});
  EXPECT_EQ(a.total_cost, 5.0);
  EXPECT_EQ(a.pairs, (Pairs{{0, 1}, {1, 0}, {2, 2}}));
}

TEST(Hungarian, MatchesExhaustiveSearchOnSquare) {
  testing::Gen gen(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = gen.Int(1, 6);
    // Small integer costs force many ties and exercise the tie-break.
    const auto rows = RandomRows(gen, n, n, trial % 2 == 0);
    const auto got = HungarianAssign(FromRows(rows));
    const auto want = oracle::BruteAssign(rows);
    ASSERT_EQ(got.total_cost, want.cost) << "trial " << trial;
    ASSERT_EQ(got.pairs, want.pairs) << "trial " << trial;
  }
}

TEST(Hungarian, MatchesExhaustiveSearchOnRectangles) {
  testing::Gen gen(103);
  for (int trial = 0; trial < 500; ++trial) {
    const int r = gen.Int(1, 6), c = gen.Int(1, 6);
    const auto rows = RandomRows(gen, r, c, trial % 2 == 0);
    const auto got = HungarianAssign(FromRows(rows));
    const auto want = oracle::BruteAssign(rows);
    ASSERT_EQ(got.pairs.size(), static_cast<std::size_t>(std::min(r, c)));
    ASSERT_EQ(got.total_cost, want.cost) << "trial " << trial;
    ASSERT_EQ(got.pairs, want.pairs) << "trial " << trial;
  }
}

TEST(Hungarian, RowConstantDoesNotChangeAssignment) {
  testing::Gen gen(107);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = gen.Int(1, 6);
    auto rows = RandomRows(gen, n, n, false);
    const auto base = HungarianAssign(FromRows(rows));
    const std::size_t r = static_cast<std::size_t>(gen.Int(0, n - 1));
    const double shift = std::round(gen.Real(-50, 50));
    for (auto& v : rows[r]) v += shift;
    const auto shifted = HungarianAssign(FromRows(rows));
    ASSERT_EQ(shifted.pairs, base.pairs);
    ASSERT_EQ(shifted.total_cost, base.total_cost + shift);
  }
}

TEST(Hungarian, OutputIsAValidMatching) {
  testing::Gen gen(109);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = gen.Int(1, 40), c = gen.Int(1, 40);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(r));
    for (auto& row : rows) {
      for (int j = 0; j < c; ++j) row.push_back(gen.Real(0, 1));
    }
    const auto a = HungarianAssign(FromRows(rows));
    ASSERT_EQ(a.pairs.size(), static_cast<std::size_t>(std::min(r, c)));
    std::vector<bool> col_used(static_cast<std::size_t>(c));
    double sum = 0.0;
    for (std::size_t k = 0; k < a.pairs.size(); ++k) {
      if (k > 0) {
        ASSERT_LT(a.pairs[k - 1].first, a.pairs[k].first);
      }
      ASSERT_FALSE(col_used[a.pairs[k].second]);
      col_used[a.pairs[k].second] = true;
      sum += rows[a.pairs[k].first][a.pairs[k].second];
    }
    ASSERT_NEAR(a.total_cost, sum, 1e-9);
  }
}

TEST(Hungarian, RejectsEmptyAndNonFinite) {
  EXPECT_EQ(testing::CodeOf([] { HungarianAssign(CostMatrix(0, 3)); }), ErrorCode::kEmptyMatrix);
  EXPECT_EQ(testing::CodeOf([] { HungarianAssign(CostMatrix(3, 0)); }), ErrorCode::kEmptyMatrix);
  CostMatrix m(2, 2);
  m(1, 1) = NAN;
  EXPECT_EQ(testing::CodeOf([&] { HungarianAssign(m); }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace weedkit::losses
