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

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>

#include "segqual/datagen.hpp"
#include "segqual/types.hpp"

namespace segqual {

// A segmentation-quality evaluator under test: maps (candidate mask, image)
// to a score. Every invocation bumps the call counter by exactly one.
class EvaluatorOracle {
 public:
  using Fn = std::function<double(const BinaryMask&, const Image&)>;

  explicit EvaluatorOracle(Fn fn) : fn_(std::move(fn)) {}

  double operator()(const BinaryMask& mask, const Image& image) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return fn_(mask, image);
  }

  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

 private:
  Fn fn_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

struct ReconstructionResult {
  BinaryMask mask;
  std::uint64_t oracle_calls = 0;  // exactly 2*w*h
};

// Recovers the hidden ground truth behind an exactly-accurate dice evaluator
// by scoring, for every pixel, a pair of candidate maps that differ only at
// that pixel. The probe base map holds every other pixel at 1: against any
// nonempty ground truth, exact dice then separates the pair strictly, so a
// tie can only mean the oracle is not the exact metric (AmbiguousOracleError).
ReconstructionResult core_set_reconstruct(const EvaluatorOracle& oracle,
                                          const Image& image, int w, int h);

struct AbsoluteAccuracyReport {
  double max_deviation = 0.0;
  bool pass = false;
  std::size_t count = 0;
};

// Max |evaluator(pred, image) - q_dice| over the tuples; passes iff <= tol.
AbsoluteAccuracyReport check_absolute_accuracy(
    const EvaluatorOracle& evaluator, std::span<const TrainingTuple> tuples,
    double tol);

struct RelativeAccuracyReport {
  bool pass = false;
  std::uint64_t violated_pairs = 0;
  std::uint64_t checked_pairs = 0;
  std::size_t used_n = 0;   // after any cap
  bool capped = false;      // deterministic subsample was applied
};

inline constexpr std::size_t kPairCheckCap = 2000;

// Over all pairs with |true_i - true_j| >= beta (and differing true scores),
// requires the evaluator ordering to match: (e_i - e_j)(t_i - t_j) > 0.
// beta = 0 is plain relative accuracy. Sequences longer than kPairCheckCap
// are deterministically subsampled (seeded) and the report says so.
RelativeAccuracyReport check_beta_relative_accuracy(
    std::span<const double> evaluator_scores,
    std::span<const double> true_scores, double beta,
    std::uint64_t subsample_seed = 0);

// One call to a perfect segmenter per tuple followed by a dice computation:
// the one-instance direction of the score-vs-segmentation reduction.
std::vector<double> reduction_demo_A_to_B(
    const std::function<BinaryMask(const Image&)>& segmenter_oracle,
    std::span<const TrainingTuple> tuples);

}  // namespace segqual
