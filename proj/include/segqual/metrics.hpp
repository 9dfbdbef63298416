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

#include <span>
#include <string>

#include "segqual/types.hpp"

namespace segqual {

// Predicted-vs-true quality score for one (sample, object, segmenter) tuple.
struct ScorePair {
  double predicted = 0.0;
  double true_value = 0.0;
  std::string sample_id;
  std::string model_id;
};

// Dice similarity coefficient 2|a^b| / (|a|+|b|). Two empty masks agree
// perfectly by convention (1.0), which keeps degenerate crops NaN-free.
double dice(const BinaryMask& a, const BinaryMask& b);

// Symmetric Hausdorff distance between the foreground pixel-center point
// sets under Euclidean distance. Both masks must be nonempty.
double hausdorff(const BinaryMask& a, const BinaryMask& b);

// Sample Pearson correlation coefficient. Sequences must have equal length
// >= 2 and neither may be constant.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Spearman rank correlation; ties receive the mean of the ranks they span.
double spearman(std::span<const double> xs, std::span<const double> ys);

// min(hd / crop_diagonal, 1.0) -- maps a Hausdorff distance into [0,1] so
// both regression heads share one bounded output range.
double normalized_hd(double hd, double crop_diagonal);

// Average ranks (1-based) with ties sharing the mean rank. Exposed for the
// rank-based statistics and their tests.
std::vector<double> average_ranks(std::span<const double> xs);

}  // namespace segqual
