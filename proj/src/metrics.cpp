// Copyright 2026 The segqual Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "segqual/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace segqual {

namespace {

struct Point {
  int x;
  int y;
};

// Foreground pixels with at least one 4-neighbor outside the foreground
// (image border counts as outside). For any query point, the nearest
// foreground pixel is either the query itself or one of these.
std::vector<Point> boundary_points(const BinaryMask& m) {
  std::vector<Point> pts;
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      if (!m.at(x, y)) continue;
      const bool interior = x > 0 && m.at(x - 1, y) && x + 1 < m.width &&
                            m.at(x + 1, y) && y > 0 && m.at(x, y - 1) &&
                            y + 1 < m.height && m.at(x, y + 1);
      if (!interior) pts.push_back({x, y});
    }
  }
  return pts;
}

// max over p in a of the distance to b, squared. Pixels shared with b
// contribute zero, so only a's pixels outside b are scanned; candidate
// nearest neighbors are restricted to b's 4-boundary, which is exact for
// filled regions (an interior nearest pixel always has a closer boundary
// neighbor toward the query).
std::int64_t directed_hd_sq(const BinaryMask& a, const BinaryMask& b,
                            const std::vector<Point>& b_boundary) {
  std::int64_t worst = 0;
  for (int y = 0; y < a.height; ++y) {
    for (int x = 0; x < a.width; ++x) {
      if (!a.at(x, y) || b.at(x, y)) continue;
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (const Point& q : b_boundary) {
        const std::int64_t dx = x - q.x;
        const std::int64_t dy = y - q.y;
        const std::int64_t d = dx * dx + dy * dy;
        if (d < best) best = d;
      }
      if (best > worst) worst = best;
    }
  }
  return worst;
}

}  // namespace

double dice(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_shape(b)) throw InvalidInputError("dice: dimension mismatch");
  std::size_t inter = 0;
  std::size_t total = 0;
  const std::size_t n = a.values.size();
  for (std::size_t i = 0; i < n; ++i) {
    inter += std::size_t(a.values[i]) & b.values[i];
    total += std::size_t(a.values[i]) + b.values[i];
  }
  if (total == 0) return 1.0;
  return 2.0 * double(inter) / double(total);
}

double hausdorff(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_shape(b)) throw InvalidInputError("hausdorff: dimension mismatch");
  if (a.empty_foreground() || b.empty_foreground())
    throw InvalidInputError("hausdorff: undefined for an empty mask");
  const auto ab = boundary_points(a);
  const auto bb = boundary_points(b);
  const std::int64_t d = std::max(directed_hd_sq(a, b, bb), directed_hd_sq(b, a, ab));
  return std::sqrt(double(d));
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidInputError("pearson: length mismatch");
  const std::size_t n = xs.size();
  if (n < 2) throw InvalidInputError("pearson: need at least 2 points");
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / double(n);
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / double(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw InvalidInputError("pearson: correlation undefined for a constant sequence");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> average_ranks(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double mean_rank = 0.5 * double(i + j) + 1.0;  // 1-based
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidInputError("spearman: length mismatch");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  return pearson(rx, ry);
}

double normalized_hd(double hd, double crop_diagonal) {
  if (!(crop_diagonal > 0.0))
    throw InvalidInputError("normalized_hd: crop diagonal must be positive");
  if (hd < 0.0) throw InvalidInputError("normalized_hd: distance must be >= 0");
  return std::min(hd / crop_diagonal, 1.0);
}

}  // namespace segqual
