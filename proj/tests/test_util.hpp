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

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "segqual/rng.hpp"
#include "segqual/types.hpp"

namespace segqual::test {

// Mask from rows like {"010", "111", "010"}; any non-'0' character is fg.
inline BinaryMask mask_from(const std::vector<std::string>& rows) {
  BinaryMask m(int(rows[0].size()), int(rows.size()));
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x)
      m.set(x, y, rows[y][x] == '0' ? 0 : 1);
  return m;
}

// The i-th of the 2^(w*h) masks of a small raster, bits in row-major order.
inline BinaryMask mask_from_bits(std::uint32_t bits, int w, int h) {
  BinaryMask m(w, h);
  for (int i = 0; i < w * h; ++i)
    m.values[std::size_t(i)] = (bits >> i) & 1u;
  return m;
}

inline BinaryMask random_mask(Rng& rng, int w, int h, double density = 0.5) {
  BinaryMask m(w, h);
  for (auto& v : m.values) v = rng.uniform01() < density ? 1 : 0;
  return m;
}

inline Image constant_image(int w, int h, int c, float value) {
  Image img(w, h, c);
  std::fill(img.values.begin(), img.values.end(), value);
  return img;
}

// Independent brute-force metric implementations the real module is
// checked against. Deliberately written in the most literal way possible.
namespace oracle {

inline double dice(const BinaryMask& a, const BinaryMask& b) {
  int inter = 0, na = 0, nb = 0;
  for (int y = 0; y < a.height; ++y)
    for (int x = 0; x < a.width; ++x) {
      if (a.at(x, y) && b.at(x, y)) ++inter;
      if (a.at(x, y)) ++na;
      if (b.at(x, y)) ++nb;
    }
  if (na + nb == 0) return 1.0;
  return 2.0 * inter / double(na + nb);
}

inline double hausdorff(const BinaryMask& a, const BinaryMask& b) {
  std::vector<std::pair<int, int>> pa, pb;
  for (int y = 0; y < a.height; ++y)
    for (int x = 0; x < a.width; ++x) {
      if (a.at(x, y)) pa.push_back({x, y});
      if (b.at(x, y)) pb.push_back({x, y});
    }
  // Squared distances of pixel coordinates are exact in double, so the
  // final sqrt rounds identically in any faithful implementation.
  const auto directed = [](const auto& from, const auto& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = 1e300;
      for (const auto& q : to) {
        const double dx = double(p.first - q.first);
        const double dy = double(p.second - q.second);
        best = std::min(best, dx * dx + dy * dy);
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(pa, pb), directed(pb, pa));
}

inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(n);
  my /= double(n);
  double num = 0.0, dx = 0.0, dy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    dx += (xs[i] - mx) * (xs[i] - mx);
    dy += (ys[i] - my) * (ys[i] - my);
  }
  return num / std::sqrt(dx * dy);
}

inline std::vector<double> ranks(const std::vector<double>& xs) {
  std::vector<double> r(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    int below = 0, equal = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (xs[j] < xs[i]) ++below;
      if (xs[j] == xs[i]) ++equal;
    }
    // mean of ranks below+1 .. below+equal
    r[i] = below + 0.5 * (equal + 1);
  }
  return r;
}

inline double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  return pearson(ranks(xs), ranks(ys));
}

}  // namespace oracle

// Unique per-test scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("segqual_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace segqual::test
