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
// Shortest-augmenting-path Hungarian algorithm with row/column potentials,
// followed by a pass that picks the lexicographically smallest optimal
// matching. Any optimal assignment uses only edges whose reduced cost
// c(i,j) - u(i) - v(j) is zero under an optimal dual, and every perfect
// matching on those tight edges is optimal, so the tie-break is a search for
// the smallest perfect matching in the tight subgraph.
#include <algorithm>
#include <cmath>
#include <limits>

#include "weedkit/error.hpp"
#include "weedkit/losses.hpp"

namespace weedkit::losses {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class TightMatcher {
 public:
  TightMatcher(std::size_t n, std::vector<char> tight, std::vector<std::size_t> row_to_col)
      : n_(n), tight_(std::move(tight)), row_to_col_(std::move(row_to_col)),
        col_to_row_(n, kNone), fixed_(n, 0) {
    for (std::size_t r = 0; r < n_; ++r) col_to_row_[row_to_col_[r]] = r;
  }

  // Fixes rows in ascending order to the smallest column that still admits a
  // perfect tight matching of the remaining rows.
  std::vector<std::size_t> LexicographicallySmallest() {
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) {
        if (!tight_[r * n_ + c]) continue;
        if (row_to_col_[r] == c || TryReassign(r, c)) break;
      }
      fixed_[r] = 1;
    }
    return row_to_col_;
  }

 private:
  // Moves row r onto column c by finding an alternating path from c's owner
  // to r's current column through unfixed rows.
  bool TryReassign(std::size_t r, std::size_t c) {
    const std::size_t owner = col_to_row_[c];
    if (fixed_[owner]) return false;
    const std::size_t freed = row_to_col_[r];
    visited_.assign(n_, 0);
    visited_[c] = 1;
    path_.clear();
    if (!Augment(owner, freed, r)) return false;
    // path_ holds (row, new column) pairs along the alternating path.
    for (const auto& [row, col] : path_) {
      row_to_col_[row] = col;
      col_to_row_[col] = row;
    }
    row_to_col_[r] = c;
    col_to_row_[c] = r;
    return true;
  }

  bool Augment(std::size_t row, std::size_t target, std::size_t excluded_row) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (!tight_[row * n_ + c] || visited_[c]) continue;
      visited_[c] = 1;
      if (c == target) {
        path_.emplace_back(row, c);
        return true;
      }
      const std::size_t next = col_to_row_[c];
      if (next == excluded_row || fixed_[next]) continue;
      if (Augment(next, target, excluded_row)) {
        path_.emplace_back(row, c);
        return true;
      }
    }
    return false;
  }

  std::size_t n_;
  std::vector<char> tight_;
  std::vector<std::size_t> row_to_col_;
  std::vector<std::size_t> col_to_row_;
  std::vector<char> fixed_;
  std::vector<char> visited_;
  std::vector<std::pair<std::size_t, std::size_t>> path_;
};

}  // namespace

Assignment HungarianAssign(const CostMatrix& costs) {
  const std::size_t rows = costs.rows();
  const std::size_t cols = costs.cols();
  if (rows == 0 || cols == 0) throw Error(ErrorCode::kEmptyMatrix, "cost matrix is empty");

  double max_abs = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!std::isfinite(costs(r, c))) {
        throw Error(ErrorCode::kInvalidArgument, "cost matrix cells must be finite");
      }
      max_abs = std::max(max_abs, std::fabs(costs(r, c)));
    }
  }

  // Pad to square with a constant sentinel; a constant row or column does
  // not change which real pairs are optimal.
  const std::size_t n = std::max(rows, cols);
  const double sentinel = max_abs + 1.0;
  std::vector<double> a(n * n, sentinel);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r * n + c] = costs(r, c);
  }

  // 1-indexed potentials; p[j] is the row matched to column j, way[j] the
  // previous column on the current augmenting path.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;

  const double eps = 1e-9 * std::max(1.0, sentinel);
  std::vector<char> tight(n * n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      tight[r * n + c] = std::fabs(a[r * n + c] - u[r + 1] - v[c + 1]) <= eps;
    }
    // The matched edge is tight by construction; guard against rounding.
    tight[r * n + row_to_col[r]] = 1;
  }
  row_to_col = TightMatcher(n, std::move(tight), std::move(row_to_col)).LexicographicallySmallest();

  Assignment out;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t c = row_to_col[r];
    if (c >= cols) continue;
    out.pairs.emplace_back(r, c);
    out.total_cost += costs(r, c);
  }
  return out;
}

}  // namespace weedkit::losses
