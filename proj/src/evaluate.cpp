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

#include "segqual/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "segqual/errors.hpp"
#include "segqual/metrics.hpp"

namespace segqual {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_csv_safe(const std::string& id) {
  if (id.find_first_of(",\n\r") != std::string::npos)
    throw InvalidInputError("identifier '" + id + "' contains a CSV delimiter");
}

}  // namespace

CorrelationReport correlate(std::span<const EvalRecord> records) {
  if (records.size() < 2)
    throw InvalidInputError("correlate: need at least 2 records");
  std::vector<double> pred, truth;
  pred.reserve(records.size());
  truth.reserve(records.size());
  for (const auto& r : records) {
    pred.push_back(r.predicted);
    truth.push_back(r.true_dice);
  }
  CorrelationReport report;
  report.pearson = pearson(pred, truth);
  report.spearman = spearman(pred, truth);
  report.count = records.size();
  return report;
}

FlagPolicy FlagPolicy::threshold(double t) {
  if (t < 0.0 || t > 1.0)
    throw InvalidInputError("flag threshold must be in [0,1]");
  return {Kind::Threshold, t};
}

FlagPolicy FlagPolicy::percentile(double p) {
  if (!(p > 0.0 && p < 100.0))
    throw InvalidInputError("flag percentile must be in (0,100)");
  return {Kind::Percentile, p};
}

std::vector<FlaggedRecord> flag_low(std::span<const EvalRecord> records,
                                    const FlagPolicy& policy) {
  std::vector<const EvalRecord*> ptrs;
  ptrs.reserve(records.size());
  for (const auto& r : records) ptrs.push_back(&r);

  const auto by_score_then_id = [](const EvalRecord* a, const EvalRecord* b) {
    return std::tie(a->predicted, a->sample_id, a->object_id, a->segmenter_id) <
           std::tie(b->predicted, b->sample_id, b->object_id, b->segmenter_id);
  };

  std::vector<FlaggedRecord> out;
  if (policy.kind == FlagPolicy::Kind::Threshold) {
    for (const auto* r : ptrs)
      if (r->predicted < policy.value)
        out.push_back({r->sample_id, r->object_id, r->segmenter_id, r->predicted});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return std::tie(a.predicted, a.sample_id, a.object_id, a.segmenter_id) <
             std::tie(b.predicted, b.sample_id, b.object_id, b.segmenter_id);
    });
  } else {
    const std::size_t take =
        std::size_t(std::floor(policy.value * double(records.size()) / 100.0));
    std::sort(ptrs.begin(), ptrs.end(), by_score_then_id);
    for (std::size_t i = 0; i < take && i < ptrs.size(); ++i)
      out.push_back({ptrs[i]->sample_id, ptrs[i]->object_id,
                     ptrs[i]->segmenter_id, ptrs[i]->predicted});
  }
  return out;
}

std::vector<SegmenterScore> benchmark(std::span<const EvalRecord> records) {
  std::map<std::string, std::pair<double, std::size_t>> sums;
  for (const auto& r : records) {
    auto& [sum, n] = sums[r.segmenter_id];
    sum += r.predicted;
    n += 1;
  }
  std::vector<SegmenterScore> out;
  for (const auto& [id, sn] : sums)
    out.push_back({id, sn.first / double(sn.second), sn.second});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.mean_predicted != b.mean_predicted)
      return a.mean_predicted > b.mean_predicted;
    return a.segmenter_id < b.segmenter_id;
  });
  return out;
}

namespace {

using Group = std::map<std::pair<std::string, std::string>,
                       std::vector<const EvalRecord*>>;

Group group_records(std::span<const EvalRecord> records) {
  Group groups;
  for (const auto& r : records)
    groups[{r.sample_id, r.object_id}].push_back(&r);
  return groups;
}

// Every group must carry exactly the full segmenter set, no duplicates.
void validate_groups(const Group& groups) {
  std::set<std::string> all;
  for (const auto& [key, recs] : groups)
    for (const auto* r : recs) all.insert(r->segmenter_id);
  for (const auto& [key, recs] : groups) {
    std::set<std::string> seen;
    for (const auto* r : recs)
      if (!seen.insert(r->segmenter_id).second)
        throw InvalidInputError("group (" + key.first + ", " + key.second +
                                ") has duplicate records for segmenter '" +
                                r->segmenter_id + "'");
    for (const auto& id : all)
      if (!seen.count(id))
        throw InvalidInputError("group (" + key.first + ", " + key.second +
                                ") is missing segmenter '" + id + "'");
  }
}

std::size_t priority_rank(std::span<const std::string> priority,
                          const std::string& id) {
  for (std::size_t i = 0; i < priority.size(); ++i)
    if (priority[i] == id) return i;
  return priority.size();
}

}  // namespace

std::vector<Selection> select_per_sample(std::span<const EvalRecord> records,
                                         std::span<const std::string> priority) {
  const Group groups = group_records(records);
  validate_groups(groups);
  std::vector<Selection> out;
  for (const auto& [key, recs] : groups) {
    const EvalRecord* best = nullptr;
    for (const auto* r : recs) {
      if (!best || r->predicted > best->predicted) {
        best = r;
      } else if (r->predicted == best->predicted) {
        const auto rr = priority_rank(priority, r->segmenter_id);
        const auto br = priority_rank(priority, best->segmenter_id);
        if (rr < br || (rr == br && r->segmenter_id < best->segmenter_id))
          best = r;
      }
    }
    out.push_back({key.first, key.second, best->segmenter_id, best->predicted,
                   best->true_dice});
  }
  return out;
}

SelectionReport selection_report(std::span<const EvalRecord> records,
                                 std::span<const std::string> priority) {
  const Group groups = group_records(records);
  validate_groups(groups);
  const auto selections = select_per_sample(records, priority);

  SelectionReport report;
  report.groups = selections.size();
  std::size_t correct = 0;
  double sum_selected = 0.0, sum_oracle = 0.0;
  std::size_t i = 0;
  for (const auto& [key, recs] : groups) {
    double best_true = recs.front()->true_dice;
    for (const auto* r : recs) best_true = std::max(best_true, r->true_dice);
    // A true-score tie counts as correct when the chosen mask attains the max.
    if (selections[i].true_dice == best_true) ++correct;
    sum_selected += selections[i].true_dice;
    sum_oracle += best_true;
    ++i;
  }
  report.accuracy = double(correct) / double(report.groups);
  report.mean_dice_selected = sum_selected / double(report.groups);
  report.mean_dice_oracle = sum_oracle / double(report.groups);

  std::map<std::string, std::pair<double, std::size_t>> sums;
  for (const auto& r : records) {
    auto& [sum, n] = sums[r.segmenter_id];
    sum += r.true_dice;
    n += 1;
  }
  for (const auto& [id, sn] : sums)
    report.per_model_mean_dice[id] = sn.first / double(sn.second);
  return report;
}

void scatter_export(std::span<const EvalRecord> records,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "sample_id,object_id,segmenter_id,predicted,predicted_hd,true_dice,true_hd\n";
  for (const auto& r : records) {
    check_csv_safe(r.sample_id);
    check_csv_safe(r.object_id);
    check_csv_safe(r.segmenter_id);
    out << r.sample_id << ',' << r.object_id << ',' << r.segmenter_id << ','
        << format_double(r.predicted) << ','
        << (r.predicted_hd ? format_double(*r.predicted_hd) : std::string())
        << ',' << format_double(r.true_dice) << ',' << format_double(r.true_hd)
        << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<EvalRecord> scatter_import(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("records file " + path.string() + " is empty");

  std::vector<EvalRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (fields.size() != 7)
      throw ParseError("records file " + path.string() + " line " +
                       std::to_string(lineno) + ": expected 7 fields, got " +
                       std::to_string(fields.size()));
    EvalRecord r;
    r.sample_id = fields[0];
    r.object_id = fields[1];
    r.segmenter_id = fields[2];
    try {
      r.predicted = std::stod(fields[3]);
      if (!fields[4].empty()) r.predicted_hd = std::stod(fields[4]);
      r.true_dice = std::stod(fields[5]);
      r.true_hd = std::stod(fields[6]);
    } catch (...) {
      throw ParseError("records file " + path.string() + " line " +
                       std::to_string(lineno) + ": malformed number");
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace segqual
