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

#include <cmath>

#include <doctest.h>

#include "segqual/metrics.hpp"
#include "test_util.hpp"

using namespace segqual;
using namespace segqual::test;

TEST_CASE("dice basics") {
  const auto a = mask_from({"110", "110", "000"});
  CHECK(dice(a, a) == 1.0);

  const auto disjoint = mask_from({"001", "001", "000"});
  CHECK(dice(a, disjoint) == 0.0);

  // |a|=4, |b|=4, |a^b|=2 -> 2*2/8
  const auto b = mask_from({"011", "011", "000"});
  CHECK(dice(a, b) == 0.5);

  const BinaryMask empty1(3, 3), empty2(3, 3);
  CHECK(dice(empty1, empty2) == 1.0);
  CHECK(dice(empty1, a) == 0.0);

  CHECK_THROWS_AS(dice(a, BinaryMask(4, 3)), InvalidInputError);
}

TEST_CASE("dice symmetry and range on random pairs") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_mask(rng, 7, 5, rng.uniform(0.1, 0.9));
    const auto b = random_mask(rng, 7, 5, rng.uniform(0.1, 0.9));
    const double d = dice(a, b);
    CHECK(d == dice(b, a));
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("flipping a mismatched pixel to match ground truth raises dice") {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto gt = random_mask(rng, 6, 6, 0.5);
    auto pred = random_mask(rng, 6, 6, 0.5);
    if (gt.empty_foreground()) continue;
    int x = -1, y = -1;
    for (int yy = 0; yy < 6 && x < 0; ++yy)
      for (int xx = 0; xx < 6; ++xx)
        if (pred.at(xx, yy) != gt.at(xx, yy)) {
          x = xx;
          y = yy;
          break;
        }
    if (x < 0) continue;
    const double before = dice(pred, gt);
    pred.set(x, y, gt.at(x, y));
    CHECK(dice(pred, gt) > before);
  }
}

TEST_CASE("hausdorff worked examples") {
  const auto a = mask_from({"100", "000", "000"});
  CHECK(hausdorff(a, a) == 0.0);

  // (0,0) vs (3,4): 3-4-5 triangle
  BinaryMask p(5, 5), q(5, 5);
  p.set(0, 0, 1);
  q.set(3, 4, 1);
  CHECK(hausdorff(p, q) == 5.0);

  // directed max over a: {(0,0),(10,0)} vs {(0,0)}
  BinaryMask u(11, 1), v(11, 1);
  u.set(0, 0, 1);
  u.set(10, 0, 1);
  v.set(0, 0, 1);
  CHECK(hausdorff(u, v) == 10.0);

  CHECK_THROWS_AS(hausdorff(BinaryMask(3, 3), a), InvalidInputError);
  CHECK_THROWS_AS(hausdorff(a, BinaryMask(3, 3)), InvalidInputError);
  CHECK_THROWS_AS(hausdorff(a, BinaryMask(4, 4)), InvalidInputError);
}

TEST_CASE("hausdorff metric properties on random triples") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_mask(rng, 8, 8, 0.3);
    auto b = random_mask(rng, 8, 8, 0.3);
    auto c = random_mask(rng, 8, 8, 0.3);
    if (a.empty_foreground()) a.set(0, 0, 1);
    if (b.empty_foreground()) b.set(1, 1, 1);
    if (c.empty_foreground()) c.set(2, 2, 1);
    const double ab = hausdorff(a, b);
    const double bc = hausdorff(b, c);
    const double ac = hausdorff(a, c);
    CHECK(ab == hausdorff(b, a));
    CHECK(ab >= 0.0);
    CHECK(ac <= ab + bc + 1e-12);
    if (a.values == b.values)
      CHECK(ab == 0.0);
    else
      CHECK(ab > 0.0);
  }
}

TEST_CASE("dice and hausdorff match brute force on all nonempty 3x3 pairs") {
  std::vector<BinaryMask> masks;
  for (std::uint32_t bits = 1; bits < 512; ++bits)
    masks.push_back(mask_from_bits(bits, 3, 3));
  for (const auto& a : masks) {
    for (const auto& b : masks) {
      CHECK(dice(a, b) == oracle::dice(a, b));
      CHECK(hausdorff(a, b) == oracle::hausdorff(a, b));
    }
  }
}

TEST_CASE("hausdorff boundary-candidate scan matches full scan on bigger masks") {
  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_mask(rng, 24, 18, rng.uniform(0.2, 0.8));
    auto b = random_mask(rng, 24, 18, rng.uniform(0.2, 0.8));
    if (a.empty_foreground()) a.set(0, 0, 1);
    if (b.empty_foreground()) b.set(5, 5, 1);
    CHECK(hausdorff(a, b) == oracle::hausdorff(a, b));
  }
}

TEST_CASE("pearson worked examples") {
  const std::vector<double> xs = {1.0, 2.0, 3.0};
  const std::vector<double> affine = {3.0, 5.0, 7.0};  // 2x+1
  CHECK(pearson(xs, affine) == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<double> neg = {-1.0, -2.0, -3.0};
  CHECK(pearson(xs, neg) == doctest::Approx(-1.0).epsilon(1e-12));

  const std::vector<double> ys = {1.0, 3.0, 2.0};
  CHECK(pearson(xs, ys) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(pearson(xs, std::vector<double>{1.0, 1.0, 1.0}), InvalidInputError);
  CHECK_THROWS_AS(pearson(xs, std::vector<double>{1.0}), InvalidInputError);
  CHECK_THROWS_AS(pearson(std::vector<double>{1.0}, std::vector<double>{1.0}),
                  InvalidInputError);
}

TEST_CASE("pearson affine invariance") {
  Rng rng(15);
  std::vector<double> xs, ys;
  for (int i = 0; i < 20; ++i) {
    xs.push_back(rng.uniform01());
    ys.push_back(rng.uniform01());
  }
  const double base = pearson(xs, ys);
  std::vector<double> up(ys), down(ys);
  for (auto& v : up) v = 3.5 * v + 0.25;
  for (auto& v : down) v = -2.0 * v + 1.0;
  CHECK(pearson(xs, up) == doctest::Approx(base).epsilon(1e-12));
  CHECK(pearson(xs, down) == doctest::Approx(-base).epsilon(1e-12));
}

TEST_CASE("spearman worked examples") {
  const std::vector<double> xs = {1.0, 2.0, 3.0};
  CHECK(spearman(xs, std::vector<double>{10.0, 20.0, 400.0}) == 1.0);
  CHECK(spearman(xs, std::vector<double>{4.0, 2.0, 1.5}) == -1.0);
  CHECK(spearman(xs, std::vector<double>{1.0, 3.0, 2.0}) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(spearman(xs, std::vector<double>{7.0, 7.0, 7.0}), InvalidInputError);
}

TEST_CASE("spearman tie handling uses average ranks") {
  const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
  const std::vector<double> ys = {1.0, 1.0, 2.0, 3.0};
  const auto r = average_ranks(ys);
  CHECK(r == std::vector<double>{1.5, 1.5, 3.0, 4.0});
  CHECK(spearman(xs, ys) == doctest::Approx(oracle::spearman(xs, ys)).epsilon(1e-12));
}

TEST_CASE("spearman invariant under strictly increasing transforms") {
  Rng rng(16);
  std::vector<double> xs, ys;
  for (int i = 0; i < 15; ++i) {
    xs.push_back(rng.uniform01());
    ys.push_back(rng.uniform(-1.0, 1.0));
  }
  const double base = spearman(xs, ys);
  std::vector<double> expd(ys), cubed(ys);
  for (auto& v : expd) v = std::exp(v);
  for (auto& v : cubed) v = v * v * v;
  CHECK(spearman(xs, expd) == doctest::Approx(base).epsilon(1e-12));
  CHECK(spearman(xs, cubed) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("pearson and spearman match brute force on random sequences") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs, ys;
    for (int i = 0; i < 10; ++i) {
      // Quantized so ties actually occur.
      xs.push_back(std::floor(rng.uniform(0.0, 5.0)));
      ys.push_back(std::floor(rng.uniform(0.0, 5.0)));
    }
    const auto constant = [](const std::vector<double>& v) {
      for (double x : v)
        if (x != v[0]) return false;
      return true;
    };
    if (constant(xs) || constant(ys)) continue;
    CHECK(pearson(xs, ys) == doctest::Approx(oracle::pearson(xs, ys)).epsilon(1e-12));
    CHECK(spearman(xs, ys) == doctest::Approx(oracle::spearman(xs, ys)).epsilon(1e-12));
  }
}

TEST_CASE("normalized_hd clamps to the unit interval") {
  CHECK(normalized_hd(0.0, 10.0) == 0.0);
  CHECK(normalized_hd(10.0, 10.0) == 1.0);
  CHECK(normalized_hd(20.0, 10.0) == 1.0);
  CHECK(normalized_hd(2.5, 10.0) == 0.25);
  CHECK_THROWS_AS(normalized_hd(1.0, 0.0), InvalidInputError);
  CHECK_THROWS_AS(normalized_hd(-1.0, 10.0), InvalidInputError);
}
