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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "segqual/datagen.hpp"
#include "segqual/evaluate.hpp"
#include "segqual/metrics.hpp"
#include "segqual/regressor.hpp"
#include "segqual/theory.hpp"
#include "segqual/version.hpp"

namespace {

using segqual::ArtifactMismatchError;
using segqual::DivergenceError;
using segqual::InvalidInputError;
using segqual::IoError;
using ordered_json = nlohmann::ordered_json;

// Exit codes are a stable contract:
//   0 success, 1 check failure, 2 config error, 3 I/O error,
//   4 training divergence, 5 artifact mismatch.
enum ExitCode {
  kOk = 0,
  kCheckFailed = 1,
  kConfigError = 2,
  kIoError = 3,
  kDiverged = 4,
  kMismatch = 5,
};

std::uint64_t fallback_seed() {
  if (const char* env = std::getenv("SEGQUAL_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

// Optional JSON config file; flags override its values, unknown keys are
// rejected. Applied by seeding each matching option's default before parse.
void apply_config_file(CLI::App& cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  nlohmann::json config;
  try {
    in >> config;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!config.is_object())
    throw InvalidInputError("config file " + path + " must hold a JSON object");
  for (const auto& [key, value] : config.items()) {
    CLI::Option* opt = cmd.get_option_no_throw("--" + key);
    if (opt == nullptr)
      throw InvalidInputError("config file " + path + " has unknown key '" + key +
                              "' for command " + cmd.get_name());
    const std::string text =
        value.is_string() ? value.get<std::string>() : value.dump();
    opt->default_val(text);
  }
}

void emit_report(const ordered_json& report, const std::string& out_path) {
  const std::string text = report.dump(2);
  std::cout << text << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + out_path + " for writing");
    out << text << "\n";
  }
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stoi(item));
    } catch (...) {
      throw InvalidInputError(std::string(what) + ": bad integer '" + item + "'");
    }
  }
  if (values.empty()) throw InvalidInputError(std::string(what) + ": empty list");
  return values;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (...) {
      throw InvalidInputError(std::string(what) + ": bad number '" + item + "'");
    }
  }
  return values;
}

std::vector<std::string> parse_string_list(const std::string& text) {
  std::vector<std::string> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(item);
  return values;
}

// ---------------------------------------------------------------------------
// gen-data

struct GenDataArgs {
  std::string out;
  int n = 50;
  int k = 1;
  int width = 96;
  int height = 96;
  std::uint64_t seed = fallback_seed();
  double jitter = 0.05;
  std::string report;
};

int run_gen_data(const GenDataArgs& args) {
  segqual::GenConfig config;
  config.n_images = args.n;
  config.objects_per_image = args.k;
  config.image_width = args.width;
  config.image_height = args.height;
  config.seed = args.seed;
  config.prompt_jitter = args.jitter;
  config.out_dir = args.out;
  const segqual::Dataset ds = segqual::gen_dataset(config);

  ordered_json report;
  report["version"] = segqual::kVersion;
  report["command"] = "gen-data";
  report["config"] = {{"out", args.out},       {"n", args.n},
                      {"k", args.k},           {"width", args.width},
                      {"height", args.height}, {"seed", args.seed},
                      {"jitter", args.jitter}};
  report["manifest"] = (std::filesystem::path(args.out) / "manifest.json").string();
  report["tuples"] = ds.tuples.size();
  emit_report(report, args.report);
  return kOk;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string data;
  std::string model_out;
  std::string history_out;
  std::string widths = "8,16,32,64";
  int input_side = segqual::kDefaultInputSide;
  int heads = 1;
  int epochs = 30;
  int batch = 32;
  double lr = 1e-4;
  double weight_decay = 0.0;
  std::string head_weights = "1,1";
  double val_fraction = 0.2;
  std::uint64_t seed = fallback_seed();
  std::uint64_t split_seed = 1;
  std::string report;
};

int run_train(const TrainArgs& args) {
  const segqual::Dataset ds = segqual::load_dataset(args.data);
  const auto split = segqual::split_by_image(ds, args.val_fraction, args.split_seed);
  std::vector<segqual::TrainingTuple> train_set, val_set;
  for (const auto i : split.train) train_set.push_back(ds.tuples[i]);
  for (const auto i : split.val) val_set.push_back(ds.tuples[i]);

  segqual::Architecture arch;
  arch.input_side = args.input_side;
  arch.block_widths = parse_int_list(args.widths, "--widths");
  arch.heads = args.heads;

  segqual::TrainConfig config;
  config.learning_rate = args.lr;
  config.batch_size = args.batch;
  config.epochs = args.epochs;
  config.weight_decay = args.weight_decay;
  config.seed = args.seed;
  config.head_weights = parse_double_list(args.head_weights, "--head-weights");

  const segqual::TrainResult result =
      segqual::train(arch, train_set, val_set, config);
  segqual::save_model(result.state, args.model_out);

  const std::string history_path =
      args.history_out.empty() ? args.model_out + ".history.csv" : args.history_out;
  {
    std::ofstream out(history_path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + history_path + " for writing");
    out << "epoch,train_loss,val_spearman\n";
    for (const auto& e : result.history) {
      char line[96];
      if (e.val_spearman)
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", e.epoch,
                      e.train_loss, *e.val_spearman);
      else
        std::snprintf(line, sizeof line, "%d,%.17g,\n", e.epoch, e.train_loss);
      out << line;
    }
    if (!out) throw IoError("failed writing " + history_path);
  }

  ordered_json report;
  report["version"] = segqual::kVersion;
  report["command"] = "train";
  report["config"] = {{"data", args.data},
                      {"model_out", args.model_out},
                      {"history_out", history_path},
                      {"widths", args.widths},
                      {"input_side", args.input_side},
                      {"heads", args.heads},
                      {"epochs", args.epochs},
                      {"batch", args.batch},
                      {"lr", args.lr},
                      {"weight_decay", args.weight_decay},
                      {"head_weights", args.head_weights},
                      {"val_fraction", args.val_fraction},
                      {"seed", args.seed},
                      {"split_seed", args.split_seed}};
  report["train_tuples"] = train_set.size();
  report["val_tuples"] = val_set.size();
  report["final_train_loss"] = result.history.back().train_loss;
  if (result.history.back().val_spearman)
    report["final_val_spearman"] = *result.history.back().val_spearman;
  emit_report(report, args.report);
  return kOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string data;
  std::string model;
  bool oracle = false;
  std::string subset = "all";
  double val_fraction = 0.2;
  std::uint64_t split_seed = 1;
  int input_side = 0;  // 0: take whatever the model declares
  std::string scatter_out;
  std::string report;
};

std::vector<segqual::EvalRecord> compute_records(
    const segqual::Dataset& ds, const std::vector<std::size_t>& indices,
    const segqual::RegressorState* model, bool oracle) {
  std::vector<segqual::EvalRecord> records;
  records.reserve(indices.size());
  for (const auto i : indices) {
    const auto& t = ds.tuples[i];
    segqual::EvalRecord r;
    r.sample_id = t.sample_id;
    r.object_id = t.object_id;
    r.segmenter_id = t.segmenter_id;
    r.true_dice = t.q_dice;
    r.true_hd = t.q_hd;
    if (oracle) {
      r.predicted = t.q_dice;
    } else {
      const auto out = segqual::predict(*model, t.image, t.pred_mask, t.prompt);
      r.predicted = out[0];
      if (out.size() > 1) r.predicted_hd = out[1];
    }
    records.push_back(std::move(r));
  }
  return records;
}

int run_eval(const EvalArgs& args) {
  if (!args.oracle && args.model.empty())
    throw InvalidInputError("eval: provide --model or --oracle");
  const segqual::Dataset ds = segqual::load_dataset(args.data);

  std::optional<segqual::RegressorState> model;
  if (!args.oracle) {
    model = segqual::load_model(args.model);
    if (args.input_side != 0 && args.input_side != model->arch.input_side)
      throw ArtifactMismatchError(
          "--input-side " + std::to_string(args.input_side) +
          " does not match the model's input side " +
          std::to_string(model->arch.input_side));
  }

  std::vector<std::size_t> indices;
  if (args.subset == "all") {
    indices.resize(ds.tuples.size());
    std::iota(indices.begin(), indices.end(), std::size_t{0});
  } else if (args.subset == "train" || args.subset == "val") {
    const auto split = segqual::split_by_image(ds, args.val_fraction, args.split_seed);
    indices = args.subset == "train" ? split.train : split.val;
  } else {
    throw InvalidInputError("eval: --subset must be all, train, or val");
  }

  const auto records =
      compute_records(ds, indices, model ? &*model : nullptr, args.oracle);
  if (!args.scatter_out.empty()) segqual::scatter_export(records, args.scatter_out);
  const auto correlation = segqual::correlate(records);

  ordered_json report;
  report["version"] = segqual::kVersion;
  report["command"] = "eval";
  report["config"] = {{"data", args.data},
                      {"model", args.model},
                      {"oracle", args.oracle},
                      {"subset", args.subset},
                      {"val_fraction", args.val_fraction},
                      {"split_seed", args.split_seed},
                      {"scatter_out", args.scatter_out}};
  report["pearson"] = correlation.pearson;
  report["spearman"] = correlation.spearman;
  report["count"] = correlation.count;
  emit_report(report, args.report);
  return kOk;
}

// ---------------------------------------------------------------------------
// flag / benchmark / select consume the records CSV written by eval

struct FlagArgs {
  std::string records;
  double threshold = -1.0;
  double percentile = -1.0;
  std::string report;
};

int run_flag(const FlagArgs& args) {
  if ((args.threshold >= 0.0) == (args.percentile >= 0.0))
    throw InvalidInputError("flag: pass exactly one of --threshold or --percentile");
  const auto records = segqual::scatter_import(args.records);
  const auto policy = args.threshold >= 0.0
                          ? segqual::FlagPolicy::threshold(args.threshold)
                          : segqual::FlagPolicy::percentile(args.percentile);
  const auto flagged = segqual::flag_low(records, policy);

  ordered_json report;
  report["version"] = segqual::kVersion;
  report["command"] = "flag";
  report["config"] = {{"records", args.records},
                      {"threshold", args.threshold},
                      {"percentile", args.percentile}};
  report["total_records"] = records.size();
  report["flagged"] = ordered_json::array();
  for (const auto& f : flagged)
    report["flagged"].push_back({{"sample_id", f.sample_id},
                                 {"object_id", f.object_id},
                                 {"segmenter_id", f.segmenter_id},
                                 {"predicted", f.predicted}});
  report["flagged_count"] = flagged.size();
  emit_report(report, args.report);
  return kOk;
}

struct BenchmarkArgs {
  std::string records;
  std::string report;
};

int run_benchmark(const BenchmarkArgs& args) {
  const auto records = segqual::scatter_import(args.records);
  const auto ranking = segqual::benchmark(records);

  ordered_json report;
  report["version"] = segqual::kVersion;
  report["command"] = "benchmark";
  report["config"] = {{"records", args.records}};
  report["ranking"] = ordered_json::array();
  for (const auto& s : ranking)
    report["ranking"].push_back({{"segmenter_id", s.segmenter_id},
                                 {"mean_predicted", s.mean_predicted},
                                 {"count", s.count}});
  emit_report(report, args.report);
  return kOk;
}

struct SelectArgs {
  std::string records;
  std::string priority;
  bool oracle = false;
  std::string report;
};

int run_select(const SelectArgs& args) {
  auto records = segqual::scatter_import(args.records);
  if (args.oracle)
    for (auto& r : records) r.predicted = r.true_dice;
  const auto priority = args.priority.empty() ? std::vector<std::string>{}
                                              : parse_string_list(args.priority);
  const auto summary = segqual::selection_report(records, priority);
  const auto correlation = segqual::correlate(records);

  ordered_json report;
  report["version"] = segqual::kVersion;
  report["command"] = "select";
  report["config"] = {{"records", args.records},
                      {"priority", args.priority},
                      {"oracle", args.oracle}};
  report["pearson"] = correlation.pearson;
  report["spearman"] = correlation.spearman;
  report["accuracy"] = summary.accuracy;
  report["mean_dice_selected"] = summary.mean_dice_selected;
  report["mean_dice_oracle"] = summary.mean_dice_oracle;
  report["per_model"] = ordered_json::object();
  for (const auto& [id, mean] : summary.per_model_mean_dice)
    report["per_model"][id] = mean;
  report["groups"] = summary.groups;
  emit_report(report, args.report);
  return kOk;
}

// ---------------------------------------------------------------------------
// grad-check / reconstruct-demo

struct GradCheckArgs {
  int input_side = 12;
  std::string widths = "8,12";
  int heads = 1;
  std::uint64_t seed = 3;
  double h = 1e-5;
  double tol = 1e-4;
  std::string report;
};

int run_grad_check(const GradCheckArgs& args) {
  segqual::Architecture arch;
  arch.input_side = args.input_side;
  arch.block_widths = parse_int_list(args.widths, "--widths");
  arch.heads = args.heads;
  const auto state = segqual::init_regressor(arch, args.seed);

  segqual::Rng rng(segqual::splitmix64(args.seed ^ 0x6adcULL));
  std::vector<segqual::ModelInput> inputs;
  for (int i = 0; i < 2; ++i) {
    segqual::ModelInput input(arch.input_side, arch.input_side, 3);
    for (auto& v : input.values) v = float(rng.uniform01());
    inputs.push_back(std::move(input));
  }
  std::vector<segqual::Example> batch;
  for (auto& input : inputs) {
    std::vector<double> targets;
    for (int h = 0; h < arch.heads; ++h) targets.push_back(rng.uniform01());
    batch.push_back({&input, std::move(targets)});
  }

  const auto check = segqual::gradient_check(
      state, batch, std::vector<double>{1.0, 1.0}, args.h, args.tol);
  ordered_json report;
  report["version"] = segqual::kVersion;
  report["command"] = "grad-check";
  report["config"] = {{"input_side", args.input_side}, {"widths", args.widths},
                      {"heads", args.heads},           {"seed", args.seed},
                      {"step", args.h},                {"tol", args.tol}};
  report["param_count"] = check.checked;
  report["max_rel_error"] = check.max_rel_error;
  report["worst_index"] = check.worst_index;
  report["pass"] = check.pass;
  emit_report(report, args.report);
  std::cout << (check.pass ? "PASS" : "FAIL") << ": max relative error "
            << check.max_rel_error << " vs tolerance " << args.tol << "\n";
  return check.pass ? kOk : kCheckFailed;
}

struct ReconstructArgs {
  int size = 16;
  int trials = 20;
  std::uint64_t seed = fallback_seed();
  double noise = 0.0;
  std::string report;
};

int run_reconstruct_demo(const ReconstructArgs& args) {
  if (args.size < 1 || args.trials < 1)
    throw InvalidInputError("reconstruct-demo: size and trials must be >= 1");
  const segqual::Image no_image(1, 1, 1);
  int exact = 0;
  std::uint64_t calls_each = 0;
  segqual::Rng noise_rng(segqual::splitmix64(args.seed ^ 0x401feULL));
  for (int trial = 0; trial < args.trials; ++trial) {
    segqual::Rng rng(segqual::derive_seed(args.seed, std::uint64_t(trial), 0, 77));
    segqual::BinaryMask hidden(args.size, args.size);
    for (auto& v : hidden.values) v = rng.uniform01() < 0.5 ? 1 : 0;
    if (hidden.empty_foreground()) hidden.set(args.size / 2, args.size / 2, 1);

    const segqual::EvaluatorOracle oracle(
        [&](const segqual::BinaryMask& candidate, const segqual::Image&) {
          double score = segqual::dice(candidate, hidden);
          if (args.noise > 0.0) score += noise_rng.uniform(-args.noise, args.noise);
          return score;
        });
    const auto result =
        segqual::core_set_reconstruct(oracle, no_image, args.size, args.size);
    calls_each = result.oracle_calls;
    if (result.mask == hidden) ++exact;
  }

  const double rate = double(exact) / double(args.trials);
  ordered_json report;
  report["version"] = segqual::kVersion;
  report["command"] = "reconstruct-demo";
  report["config"] = {{"size", args.size},
                      {"trials", args.trials},
                      {"seed", args.seed},
                      {"noise", args.noise}};
  report["exact_recoveries"] = exact;
  report["trials"] = args.trials;
  report["recovery_rate"] = rate;
  report["oracle_calls_per_trial"] = calls_each;
  emit_report(report, args.report);
  std::cout << exact << "/" << args.trials << " exact, " << calls_each
            << " oracle calls each\n";
  // With an exact oracle anything short of full recovery is a failure.
  if (args.noise == 0.0 && exact != args.trials) return kCheckFailed;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"segqual: ground-truth-free segmentation quality assessment"};
  app.set_version_flag("--version", segqual::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "optional JSON config; flags override it");

  GenDataArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen-data", "generate a synthetic dataset");
  gen->add_option("--out", gen_args.out, "output dataset directory")->required();
  gen->add_option("--n", gen_args.n, "number of images");
  gen->add_option("--k", gen_args.k, "objects per image");
  gen->add_option("--width", gen_args.width, "image width");
  gen->add_option("--height", gen_args.height, "image height");
  gen->add_option("--seed", gen_args.seed, "master seed");
  gen->add_option("--jitter", gen_args.jitter, "prompt jitter fraction per side");
  gen->add_option("--report", gen_args.report, "also write the JSON report here");

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train", "train the quality regressor");
  train->add_option("--data", train_args.data, "dataset directory")->required();
  train->add_option("--model-out", train_args.model_out, "model file to write")->required();
  train->add_option("--history-out", train_args.history_out, "per-epoch CSV path");
  train->add_option("--widths", train_args.widths, "conv block widths, comma separated");
  train->add_option("--input-side", train_args.input_side, "preprocessing resolution");
  train->add_option("--heads", train_args.heads, "1 (dice) or 2 (dice+hausdorff)");
  train->add_option("--epochs", train_args.epochs, "training epochs");
  train->add_option("--batch", train_args.batch, "mini-batch size");
  train->add_option("--lr", train_args.lr, "learning rate");
  train->add_option("--weight-decay", train_args.weight_decay, "decoupled weight decay");
  train->add_option("--head-weights", train_args.head_weights, "loss weights per head");
  train->add_option("--val-fraction", train_args.val_fraction, "held-out image fraction");
  train->add_option("--seed", train_args.seed, "training seed");
  train->add_option("--split-seed", train_args.split_seed, "train/val split seed");
  train->add_option("--report", train_args.report, "also write the JSON report here");

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "score a dataset and correlate");
  eval->add_option("--data", eval_args.data, "dataset directory")->required();
  eval->add_option("--model", eval_args.model, "trained model file");
  eval->add_flag("--oracle", eval_args.oracle, "use true dice as the prediction");
  eval->add_option("--subset", eval_args.subset, "all, train, or val");
  eval->add_option("--val-fraction", eval_args.val_fraction, "held-out image fraction");
  eval->add_option("--split-seed", eval_args.split_seed, "train/val split seed");
  eval->add_option("--input-side", eval_args.input_side,
                   "expected model resolution (mismatch aborts)");
  eval->add_option("--scatter-out", eval_args.scatter_out, "records CSV to write");
  eval->add_option("--report", eval_args.report, "also write the JSON report here");

  FlagArgs flag_args;
  CLI::App* flag = app.add_subcommand("flag", "flag low-quality segmentations");
  flag->add_option("--records", flag_args.records, "records CSV from eval")->required();
  flag->add_option("--threshold", flag_args.threshold, "flag predicted < t");
  flag->add_option("--percentile", flag_args.percentile, "flag the lowest p percent");
  flag->add_option("--report", flag_args.report, "also write the JSON report here");

  BenchmarkArgs bench_args;
  CLI::App* bench = app.add_subcommand("benchmark", "rank segmenters by mean score");
  bench->add_option("--records", bench_args.records, "records CSV from eval")->required();
  bench->add_option("--report", bench_args.report, "also write the JSON report here");

  SelectArgs select_args;
  CLI::App* select = app.add_subcommand("select", "pick the best mask per sample");
  select->add_option("--records", select_args.records, "records CSV from eval")->required();
  select->add_option("--priority", select_args.priority, "tie-break order, comma separated");
  select->add_flag("--oracle", select_args.oracle, "select by true dice instead");
  select->add_option("--report", select_args.report, "also write the JSON report here");

  GradCheckArgs grad_args;
  CLI::App* gradc = app.add_subcommand("grad-check",
                                       "finite-difference gradient verification");
  gradc->add_option("--input-side", grad_args.input_side, "check model resolution");
  gradc->add_option("--widths", grad_args.widths, "check model widths");
  gradc->add_option("--heads", grad_args.heads, "check model heads");
  gradc->add_option("--seed", grad_args.seed, "init/input seed");
  gradc->add_option("--step", grad_args.h, "finite-difference step");
  gradc->add_option("--tol", grad_args.tol, "max relative error to pass");
  gradc->add_option("--report", grad_args.report, "also write the JSON report here");

  ReconstructArgs rec_args;
  CLI::App* rec = app.add_subcommand("reconstruct-demo",
                                     "recover hidden masks through the evaluator");
  rec->add_option("--size", rec_args.size, "hidden mask side");
  rec->add_option("--trials", rec_args.trials, "number of hidden masks");
  rec->add_option("--seed", rec_args.seed, "mask seed");
  rec->add_option("--noise", rec_args.noise, "uniform oracle noise amplitude");
  rec->add_option("--report", rec_args.report, "also write the JSON report here");

  try {
    // First pass: pick up --config and the invoked subcommand so the config
    // values can become that command's parse defaults.
    CLI::App* active = nullptr;
    for (int i = 1; i < argc; ++i) {
      const std::string token = argv[i];
      if (token == "--config" && i + 1 < argc) config_path = argv[i + 1];
      if (active == nullptr)
        for (CLI::App* sub : {gen, train, eval, flag, bench, select, gradc, rec})
          if (token == sub->get_name()) active = sub;
    }
    if (!config_path.empty()) {
      if (active == nullptr)
        throw InvalidInputError("--config requires a subcommand");
      apply_config_file(*active, config_path);
    }

    app.parse(argc, argv);

    if (*gen) return run_gen_data(gen_args);
    if (*train) return run_train(train_args);
    if (*eval) return run_eval(eval_args);
    if (*flag) return run_flag(flag_args);
    if (*bench) return run_benchmark(bench_args);
    if (*select) return run_select(select_args);
    if (*gradc) return run_grad_check(grad_args);
    if (*rec) return run_reconstruct_demo(rec_args);
    return kConfigError;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  } catch (const InvalidInputError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ArtifactMismatchError& e) {
    std::cerr << "artifact mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const DivergenceError& e) {
    std::cerr << "training diverged: " << e.what() << "\n";
    return kDiverged;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const segqual::ParseError& e) {
    std::cerr << "file format error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}
