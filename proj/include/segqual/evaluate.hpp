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

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace segqual {

// Predicted and true quality for one (sample, object, segmenter) tuple.
// predicted_hd is present only for two-head models.
struct EvalRecord {
  std::string sample_id;
  std::string object_id;
  std::string segmenter_id;
  double predicted = 0.0;
  std::optional<double> predicted_hd;
  double true_dice = 0.0;
  double true_hd = 0.0;
};

struct CorrelationReport {
  double pearson = 0.0;
  double spearman = 0.0;
  std::size_t count = 0;
};

// Correlations between predicted and true dice over all records.
CorrelationReport correlate(std::span<const EvalRecord> records);

// Flagging policy: either every record with predicted score below a fixed
// threshold, or the lowest floor(p*N/100) records by predicted score.
struct FlagPolicy {
  enum class Kind { Threshold, Percentile } kind = Kind::Threshold;
  double value = 0.5;

  static FlagPolicy threshold(double t);
  static FlagPolicy percentile(double p);
};

struct FlaggedRecord {
  std::string sample_id;
  std::string object_id;
  std::string segmenter_id;
  double predicted = 0.0;
};

std::vector<FlaggedRecord> flag_low(std::span<const EvalRecord> records,
                                    const FlagPolicy& policy);

struct SegmenterScore {
  std::string segmenter_id;
  double mean_predicted = 0.0;
  std::size_t count = 0;
};

// Mean predicted dice per segmenter, best first; ties break by id.
std::vector<SegmenterScore> benchmark(std::span<const EvalRecord> records);

struct Selection {
  std::string sample_id;
  std::string object_id;
  std::string chosen_segmenter;
  double predicted = 0.0;
  double true_dice = 0.0;
};

// Per (sample, object) group, picks the segmenter with the highest
// predicted score. Every group must contain the same segmenter set;
// predicted-score ties break by the given priority order (default:
// lexicographic by segmenter id).
std::vector<Selection> select_per_sample(
    std::span<const EvalRecord> records,
    std::span<const std::string> priority = {});

struct SelectionReport {
  double accuracy = 0.0;            // chosen segmenter attains the max true dice
  double mean_dice_selected = 0.0;  // mean true dice of the chosen masks
  double mean_dice_oracle = 0.0;    // mean per-group max true dice
  std::map<std::string, double> per_model_mean_dice;
  std::size_t groups = 0;
};

SelectionReport selection_report(std::span<const EvalRecord> records,
                                 std::span<const std::string> priority = {});

// CSV with one row per record (header included), deterministic order.
void scatter_export(std::span<const EvalRecord> records,
                    const std::filesystem::path& path);
std::vector<EvalRecord> scatter_import(const std::filesystem::path& path);

}  // namespace segqual
