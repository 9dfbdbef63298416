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
#include <random>

namespace segqual {

// Samplers are layered on top of std::mt19937_64 by hand (instead of the
// <random> distributions, whose algorithms differ between standard library
// implementations) so that seeded outputs are identical on every platform.
// Byte-identical dataset regeneration is part of the toolkit's contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0,1) with 53 random bits.
  double uniform01() {
    return double(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n) {
    return std::uint64_t((static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  int uniform_int(int lo, int hi_inclusive) {
    return lo + int(below(std::uint64_t(hi_inclusive - lo + 1)));
  }

  double normal(double mean = 0.0, double stddev = 1.0) {
    // Box-Muller; the spare value is kept for the next call.
    if (have_spare_) {
      have_spare_ = false;
      return mean + stddev * spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform01();
    } while (u1 == 0.0);
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return mean + stddev * r * std::cos(a);
  }

  // Marsaglia-Tsang, with the alpha < 1 boost step.
  double gamma(double alpha) {
    if (alpha < 1.0) {
      const double u = uniform01();
      return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = 0.0;
      double v = 0.0;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double alpha, double b) {
    const double x = gamma(alpha);
    const double y = gamma(b);
    return x / (x + y);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-tuple seed: hash of (master seed, image index, object index, segmenter
// index). Parallel generation of distinct tuples stays order-independent.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i,
                                 std::uint64_t j, std::uint64_t m) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ (i + 0x100000001ULL));
  h = splitmix64(h ^ (j + 0x200000002ULL));
  h = splitmix64(h ^ (m + 0x300000003ULL));
  return h;
}

}  // namespace segqual
