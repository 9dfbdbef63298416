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
#include <fstream>

#include <doctest.h>

#include "segqual/evaluate.hpp"
#include "test_util.hpp"

using namespace segqual;
using namespace segqual::test;

namespace {

EvalRecord rec(const std::string& sample, const std::string& seg,
               double predicted, double true_dice, double true_hd = 0.1) {
  EvalRecord r;
  r.sample_id = sample;
  r.object_id = "0";
  r.segmenter_id = seg;
  r.predicted = predicted;
  r.true_dice = true_dice;
  r.true_hd = true_hd;
  return r;
}

// Oracle records: predicted == true, three segmenters per sample.
std::vector<EvalRecord> oracle_records(int samples, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<EvalRecord> records;
  for (int i = 0; i < samples; ++i) {
    const std::string sid = "s" + std::to_string(100 + i);
    for (const char* seg : {"good", "medium", "poor"}) {
      const double q = rng.uniform01();
      records.push_back(rec(sid, seg, q, q));
    }
  }
  return records;
}

}  // namespace

TEST_CASE("correlate on oracle and inverted predictions") {
  auto records = oracle_records(20, 81);
  const auto report = correlate(records);
  CHECK(report.pearson == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.spearman == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.count == records.size());

  for (auto& r : records) r.predicted = 1.0 - r.true_dice;
  const auto inverted = correlate(records);
  CHECK(inverted.pearson == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(inverted.spearman == doctest::Approx(-1.0).epsilon(1e-12));

  std::vector<EvalRecord> constant = {rec("a", "m", 0.5, 0.1),
                                      rec("b", "m", 0.5, 0.9)};
  CHECK_THROWS_AS(correlate(constant), InvalidInputError);
  CHECK_THROWS_AS(correlate(std::vector<EvalRecord>{rec("a", "m", 0.5, 0.1)}),
                  InvalidInputError);
}

TEST_CASE("flag_low threshold policy") {
  const std::vector<EvalRecord> records = {rec("a", "m", 0.3, 0.3),
                                           rec("b", "m", 0.7, 0.7)};
  const auto flagged = flag_low(records, FlagPolicy::threshold(0.5));
  REQUIRE(flagged.size() == 1);
  CHECK(flagged[0].sample_id == "a");

  CHECK(flag_low(records, FlagPolicy::threshold(0.0)).empty());
  CHECK_THROWS_AS(FlagPolicy::threshold(1.5), InvalidInputError);
}

TEST_CASE("flag_low percentile picks exactly the floor count") {
  std::vector<EvalRecord> records;
  for (int i = 0; i < 100; ++i)
    records.push_back(rec("s" + std::to_string(i), "m", double(i) / 100.0,
                          double(i) / 100.0));
  Rng rng(82);
  for (std::size_t i = records.size(); i > 1; --i)
    std::swap(records[i - 1], records[rng.below(i)]);

  const auto flagged = flag_low(records, FlagPolicy::percentile(10));
  REQUIRE(flagged.size() == 10);
  for (const auto& f : flagged) CHECK(f.predicted < 0.10);

  // floor(p*N/100) for N without ties, any p
  CHECK(flag_low(records, FlagPolicy::percentile(7.9)).size() == 7);
  CHECK(flag_low(records, FlagPolicy::percentile(0.5)).empty());
  CHECK_THROWS_AS(FlagPolicy::percentile(0.0), InvalidInputError);
  CHECK_THROWS_AS(FlagPolicy::percentile(100.0), InvalidInputError);
}

TEST_CASE("flag_low percentile breaks score ties by id") {
  const std::vector<EvalRecord> records = {
      rec("b", "m", 0.5, 0.5), rec("a", "m", 0.5, 0.5), rec("c", "m", 0.5, 0.5),
      rec("d", "m", 0.9, 0.9)};
  const auto flagged = flag_low(records, FlagPolicy::percentile(50));
  REQUIRE(flagged.size() == 2);
  CHECK(flagged[0].sample_id == "a");
  CHECK(flagged[1].sample_id == "b");
}

TEST_CASE("benchmark ranks by mean predicted score") {
  const auto records = oracle_records(50, 83);
  const auto scores = benchmark(records);
  REQUIRE(scores.size() == 3);
  CHECK(scores[0].mean_predicted >= scores[1].mean_predicted);
  CHECK(scores[1].mean_predicted >= scores[2].mean_predicted);

  // With q taken from the truth, ranking equals the true mean-dice ranking.
  std::map<std::string, std::pair<double, int>> sums;
  for (const auto& r : records) {
    sums[r.segmenter_id].first += r.true_dice;
    sums[r.segmenter_id].second += 1;
  }
  std::vector<std::pair<double, std::string>> expect;
  for (const auto& [id, sn] : sums)
    expect.push_back({sn.first / sn.second, id});
  std::sort(expect.begin(), expect.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;
  });
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(scores[i].segmenter_id == expect[i].second);
    CHECK(scores[i].mean_predicted == doctest::Approx(expect[i].first).epsilon(1e-12));
  }

  const std::vector<EvalRecord> single = {rec("a", "only", 0.4, 0.4),
                                          rec("b", "only", 0.6, 0.6)};
  const auto one = benchmark(single);
  REQUIRE(one.size() == 1);
  CHECK(one[0].mean_predicted == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(one[0].count == 2);
}

TEST_CASE("select_per_sample takes the argmax and honors tie priority") {
  std::vector<EvalRecord> records = {rec("s1", "a", 0.9, 0.9),
                                     rec("s1", "b", 0.5, 0.5),
                                     rec("s1", "c", 0.6, 0.6)};
  const auto picks = select_per_sample(records);
  REQUIRE(picks.size() == 1);
  CHECK(picks[0].chosen_segmenter == "a");

  std::vector<EvalRecord> tied = {rec("s1", "zeta", 0.7, 0.2),
                                  rec("s1", "beta", 0.7, 0.6),
                                  rec("s1", "alpha", 0.1, 0.9)};
  CHECK(select_per_sample(tied)[0].chosen_segmenter == "beta");  // lexicographic
  const std::vector<std::string> priority = {"zeta", "beta"};
  CHECK(select_per_sample(tied, priority)[0].chosen_segmenter == "zeta");

  std::vector<EvalRecord> missing = {rec("s1", "a", 0.9, 0.9),
                                     rec("s1", "b", 0.5, 0.5),
                                     rec("s2", "a", 0.4, 0.4)};
  try {
    select_per_sample(missing);
    FAIL("expected InvalidInputError");
  } catch (const InvalidInputError& e) {
    const std::string what = e.what();
    CHECK(what.find("s2") != std::string::npos);
    CHECK(what.find("'b'") != std::string::npos);
  }
}

TEST_CASE("selection is invariant under strictly increasing score transforms") {
  auto records = oracle_records(30, 84);
  const auto base = select_per_sample(records);
  auto transformed = records;
  for (auto& r : transformed)
    r.predicted = std::exp(3.0 * r.predicted) + 1.0;  // strictly increasing
  const auto after = select_per_sample(transformed);
  REQUIRE(after.size() == base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    CHECK(after[i].chosen_segmenter == base[i].chosen_segmenter);
}

TEST_CASE("selection_report with oracle predictions attains the upper bound") {
  const auto records = oracle_records(40, 85);
  const auto report = selection_report(records);
  CHECK(report.accuracy == 1.0);
  CHECK(report.mean_dice_selected == report.mean_dice_oracle);
  CHECK(report.groups == 40);

  double best_model = 0.0;
  for (const auto& [id, mean] : report.per_model_mean_dice)
    best_model = std::max(best_model, mean);
  CHECK(report.mean_dice_oracle >= best_model);
}

TEST_CASE("selection_report counts true-score ties as correct") {
  // Both a and b attain the max true dice; predicting either is correct.
  const std::vector<EvalRecord> records = {rec("s1", "a", 0.8, 0.9),
                                           rec("s1", "b", 0.9, 0.9),
                                           rec("s1", "c", 0.1, 0.2)};
  const auto report = selection_report(records);
  CHECK(report.accuracy == 1.0);
  CHECK(report.mean_dice_selected == 0.9);
}

TEST_CASE("oracle bound dominates every single model on random records") {
  Rng rng(86);
  std::vector<EvalRecord> records;
  for (int i = 0; i < 60; ++i)
    for (const char* seg : {"a", "b", "c"})
      records.push_back(rec("s" + std::to_string(i), seg, rng.uniform01(),
                            rng.uniform01()));
  const auto report = selection_report(records);
  for (const auto& [id, mean] : report.per_model_mean_dice)
    CHECK(report.mean_dice_oracle >= mean - 1e-12);
  CHECK(report.mean_dice_selected <= report.mean_dice_oracle + 1e-12);
}

TEST_CASE("scatter CSV round-trips and counts lines") {
  const auto dir = scratch_dir("scatter");
  auto records = oracle_records(5, 87);
  records[2].predicted_hd = 0.321;
  records[4].predicted_hd = 1.0 / 3.0;

  const auto path = dir / "scatter.csv";
  scatter_export(records, path);

  std::ifstream in(path);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == records.size() + 1);

  const auto back = scatter_import(path);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(back[i].sample_id == records[i].sample_id);
    CHECK(back[i].object_id == records[i].object_id);
    CHECK(back[i].segmenter_id == records[i].segmenter_id);
    CHECK(back[i].predicted == records[i].predicted);
    CHECK(back[i].predicted_hd == records[i].predicted_hd);
    CHECK(back[i].true_dice == records[i].true_dice);
    CHECK(back[i].true_hd == records[i].true_hd);
  }

  scatter_export({}, path);
  CHECK(scatter_import(path).empty());
  std::ifstream empty_in(path);
  lines = 0;
  while (std::getline(empty_in, line)) ++lines;
  CHECK(lines == 1);
}
