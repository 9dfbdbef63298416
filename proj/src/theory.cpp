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

#include "segqual/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "segqual/metrics.hpp"
#include "segqual/rng.hpp"

namespace segqual {

ReconstructionResult core_set_reconstruct(const EvaluatorOracle& oracle,
                                          const Image& image, int w, int h) {
  if (w < 1 || h < 1)
    throw InvalidInputError("core_set_reconstruct: dimensions must be >= 1");
  const std::uint64_t start_calls = oracle.calls();
  ReconstructionResult result;
  result.mask = BinaryMask(w, h);

  BinaryMask probe(w, h);
  std::fill(probe.values.begin(), probe.values.end(), std::uint8_t{1});
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      probe.set(x, y, 0);
      const double score_off = oracle(probe, image);
      probe.set(x, y, 1);
      const double score_on = oracle(probe, image);
      if (score_on == score_off)
        throw AmbiguousOracleError(
            "pixel probe (" + std::to_string(x) + "," + std::to_string(y) +
            ") scored equal either way; the evaluator is not the exact metric");
      result.mask.set(x, y, score_on > score_off ? 1 : 0);
    }
  }
  result.oracle_calls = oracle.calls() - start_calls;
  return result;
}

AbsoluteAccuracyReport check_absolute_accuracy(
    const EvaluatorOracle& evaluator, std::span<const TrainingTuple> tuples,
    double tol) {
  if (tuples.empty())
    throw InvalidInputError("check_absolute_accuracy: no tuples");
  AbsoluteAccuracyReport report;
  report.count = tuples.size();
  for (const auto& t : tuples) {
    const double deviation = std::abs(evaluator(t.pred_mask, t.image) - t.q_dice);
    report.max_deviation = std::max(report.max_deviation, deviation);
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

RelativeAccuracyReport check_beta_relative_accuracy(
    std::span<const double> evaluator_scores,
    std::span<const double> true_scores, double beta,
    std::uint64_t subsample_seed) {
  if (evaluator_scores.size() != true_scores.size())
    throw InvalidInputError("check_beta_relative_accuracy: length mismatch");
  if (beta < 0.0)
    throw InvalidInputError("check_beta_relative_accuracy: beta must be >= 0");

  std::vector<std::size_t> idx(evaluator_scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  RelativeAccuracyReport report;
  if (idx.size() > kPairCheckCap) {
    Rng rng(splitmix64(subsample_seed ^ 0xbe7aULL));
    for (std::size_t i = idx.size(); i > 1; --i)
      std::swap(idx[i - 1], idx[std::size_t(rng.below(i))]);
    idx.resize(kPairCheckCap);
    std::sort(idx.begin(), idx.end());
    report.capped = true;
  }
  report.used_n = idx.size();

  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const double dt = true_scores[idx[a]] - true_scores[idx[b]];
      if (dt == 0.0 || std::abs(dt) < beta) continue;
      ++report.checked_pairs;
      const double de = evaluator_scores[idx[a]] - evaluator_scores[idx[b]];
      if (!(de * dt > 0.0)) ++report.violated_pairs;
    }
  }
  report.pass = report.violated_pairs == 0;
  return report;
}

std::vector<double> reduction_demo_A_to_B(
    const std::function<BinaryMask(const Image&)>& segmenter_oracle,
    std::span<const TrainingTuple> tuples) {
  std::vector<double> scores;
  scores.reserve(tuples.size());
  for (const auto& t : tuples)
    scores.push_back(dice(t.pred_mask, segmenter_oracle(t.image)));
  return scores;
}

}  // namespace segqual
