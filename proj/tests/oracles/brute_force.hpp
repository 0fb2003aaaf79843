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
// Slow, obviously-correct reference implementations used only by tests.
// They share no code with the library: morphology scans the full window per
// pixel, components use union-find, assignment enumerates permutations, and
// the evaluator works in exact rationals.
#ifndef WEEDKIT_TESTS_ORACLES_BRUTE_FORCE_HPP_
#define WEEDKIT_TESTS_ORACLES_BRUTE_FORCE_HPP_

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

// --- Morphology -------------------------------------------------------------

// Row-major 0/1 grid.
struct Grid {
  int w = 0;
  int h = 0;
  std::vector<int> v;

  int at(int x, int y) const { return v[static_cast<std::size_t>(y * w + x)]; }
};

// Square window of side k. Pixels outside the grid read as `outside`.
inline Grid Window(const Grid& g, int k, bool erode, int outside) {
  Grid out{g.w, g.h, std::vector<int>(g.v.size())};
  const int r = k / 2;
  for (int y = 0; y < g.h; ++y) {
    for (int x = 0; x < g.w; ++x) {
      int acc = erode ? 1 : 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const int xx = x + dx, yy = y + dy;
          const int s = (xx < 0 || yy < 0 || xx >= g.w || yy >= g.h) ? outside : g.at(xx, yy);
          acc = erode ? (acc & s) : (acc | s);
        }
      }
      out.v[static_cast<std::size_t>(y * g.w + x)] = acc;
    }
  }
  return out;
}

inline Grid Erode(const Grid& g, int k) { return Window(g, k, true, 1); }
inline Grid Dilate(const Grid& g, int k) { return Window(g, k, false, 0); }
inline Grid Refine(const Grid& g, int k) {
  return Erode(Dilate(Dilate(Erode(g, k), k), k), k);
}

// --- Connected components -----------------------------------------------------

struct Component {
  long count = 0;
  int xmin = std::numeric_limits<int>::max();
  int ymin = std::numeric_limits<int>::max();
  int xmax = -1;
  int ymax = -1;
  int first = -1;  // raster index of the first pixel
};

inline std::vector<Component> Components(const Grid& g, bool eight) {
  std::vector<int> parent(g.v.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)];
    return a;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  };
  for (int y = 0; y < g.h; ++y) {
    for (int x = 0; x < g.w; ++x) {
      if (!g.at(x, y)) continue;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if ((dx == 0 && dy == 0) || (!eight && dx != 0 && dy != 0)) continue;
          const int xx = x + dx, yy = y + dy;
          if (xx < 0 || yy < 0 || xx >= g.w || yy >= g.h || !g.at(xx, yy)) continue;
          unite(y * g.w + x, yy * g.w + xx);
        }
      }
    }
  }
  std::map<int, Component> by_root;
  for (int i = 0; i < static_cast<int>(g.v.size()); ++i) {
    if (!g.v[static_cast<std::size_t>(i)]) continue;
    auto& c = by_root[find(i)];
    const int x = i % g.w, y = i / g.w;
    if (c.first < 0) c.first = i;
    ++c.count;
    c.xmin = std::min(c.xmin, x);
    c.ymin = std::min(c.ymin, y);
    c.xmax = std::max(c.xmax, x);
    c.ymax = std::max(c.ymax, y);
  }
  std::vector<Component> out;
  for (auto& [root, c] : by_root) out.push_back(c);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// --- Assignment ---------------------------------------------------------------

struct BruteAssignment {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // lexicographically smallest optimum
};

// Enumerates every injective map of the shorter side into the longer one.
inline BruteAssignment BruteAssign(const std::vector<std::vector<double>>& c) {
  const std::size_t rows = c.size(), cols = c.front().size();
  const bool transpose = rows > cols;
  const std::size_t small = std::min(rows, cols), big = std::max(rows, cols);
  std::vector<std::size_t> perm(big);
  std::iota(perm.begin(), perm.end(), 0);
  BruteAssignment best;
  do {
    double cost = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < small; ++i) {
      const std::size_t r = transpose ? perm[i] : i;
      const std::size_t col = transpose ? i : perm[i];
      cost += c[r][col];
      pairs.emplace_back(r, col);
    }
    std::sort(pairs.begin(), pairs.end());
    if (cost < best.cost || (cost == best.cost && pairs < best.pairs)) {
      best.cost = cost;
      best.pairs = pairs;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// --- Detection evaluation -------------------------------------------------------

struct Box {
  int xmin, ymin, xmax, ymax;  // inclusive
};

struct GtObject {
  int image;
  int cls;
  Box box;
};

struct Det {
  int image;
  int cls;
  Box box;
  double score;
};

// Exact IoU of inclusive integer boxes.
inline Rational Iou(const Box& a, const Box& b) {
  auto area = [](const Box& x) {
    return static_cast<long>(x.xmax - x.xmin + 1) * static_cast<long>(x.ymax - x.ymin + 1);
  };
  const long iw = std::max(0, std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin) + 1);
  const long ih = std::max(0, std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin) + 1);
  const long inter = iw * ih;
  return Rational(inter, area(a) + area(b) - inter);
}

struct ClassMetrics {
  bool has_gt = false;
  int num_det = 0;
  Rational ap_exact;   // mean over thresholds
  Rational ap_101;     // mean over thresholds
  Rational ar;
  std::vector<Rational> ap_exact_per_threshold;
};

inline Rational ApExact(const std::vector<std::pair<Rational, Rational>>& rp) {
  Rational total = 0, prev = 0;
  for (std::size_t i = 0; i < rp.size(); ++i) {
    Rational env = 0;
    for (std::size_t j = i; j < rp.size(); ++j) env = std::max(env, rp[j].second);
    total += (rp[i].first - prev) * env;
    prev = rp[i].first;
  }
  return total;
}

inline Rational Ap101(const std::vector<std::pair<Rational, Rational>>& rp) {
  Rational total = 0;
  for (int k = 0; k <= 100; ++k) {
    Rational env = 0;
    for (const auto& [r, p] : rp) {
      if (r >= Rational(k, 100)) env = std::max(env, p);
    }
    total += env;
  }
  return total / 101;
}

// Thresholds are given as exact rationals (e.g. 50/100 ... 95/100).
inline ClassMetrics EvaluateClass(const std::vector<GtObject>& gts, const std::vector<Det>& dets, int cls,
                                  const std::vector<Rational>& thresholds, int max_dets) {
  ClassMetrics m;
  int n_gt = 0;
  for (const auto& g : gts) n_gt += g.cls == cls;
  // Input index of every detection of this class.
  std::vector<int> mine;
  for (int i = 0; i < static_cast<int>(dets.size()); ++i) {
    if (dets[static_cast<std::size_t>(i)].cls == cls) mine.push_back(i);
  }
  auto before = [&](int a, int b) {
    const auto& da = dets[static_cast<std::size_t>(a)];
    const auto& db = dets[static_cast<std::size_t>(b)];
    return da.score != db.score ? da.score > db.score : a < b;
  };
  std::map<int, std::vector<int>> per_image;
  for (int i : mine) per_image[dets[static_cast<std::size_t>(i)].image].push_back(i);
  std::vector<int> kept;
  for (auto& [img, list] : per_image) {
    std::sort(list.begin(), list.end(), before);
    if (static_cast<int>(list.size()) > max_dets) list.resize(static_cast<std::size_t>(max_dets));
    kept.insert(kept.end(), list.begin(), list.end());
  }
  m.num_det = static_cast<int>(kept.size());
  if (n_gt == 0) return m;
  m.has_gt = true;
  std::sort(kept.begin(), kept.end(), before);

  for (const auto& t : thresholds) {
    std::map<int, bool> is_tp;
    int matched = 0;
    for (const auto& [img, list] : per_image) {
      std::vector<Box> g;
      for (const auto& o : gts) {
        if (o.cls == cls && o.image == img) g.push_back(o.box);
      }
      std::vector<bool> used(g.size(), false);
      for (int d : list) {
        int best = -1;
        Rational best_iou = -1;
        for (std::size_t j = 0; j < g.size(); ++j) {
          if (used[j]) continue;
          const Rational v = Iou(dets[static_cast<std::size_t>(d)].box, g[j]);
          if (v >= t && v > best_iou) {
            best = static_cast<int>(j);
            best_iou = v;
          }
        }
        is_tp[d] = best >= 0;
        if (best >= 0) {
          used[static_cast<std::size_t>(best)] = true;
          ++matched;
        }
      }
    }
    std::vector<std::pair<Rational, Rational>> rp;
    int tp = 0, n = 0;
    for (int d : kept) {
      ++n;
      tp += is_tp[d];
      rp.emplace_back(Rational(tp, n_gt), Rational(tp, n));
    }
    const Rational exact = ApExact(rp);
    m.ap_exact_per_threshold.push_back(exact);
    m.ap_exact += exact;
    m.ap_101 += Ap101(rp);
    m.ar += Rational(matched, n_gt);
  }
  const Rational k(static_cast<long>(thresholds.size()));
  m.ap_exact /= k;
  m.ap_101 /= k;
  m.ar /= k;
  return m;
}

}  // namespace oracle

#endif  // WEEDKIT_TESTS_ORACLES_BRUTE_FORCE_HPP_
