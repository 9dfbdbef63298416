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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "segqual/datagen.hpp"
#include "segqual/preprocess.hpp"
#include "segqual/types.hpp"

namespace segqual {

// Small convolutional regression network: per block a 3x3 same-padding
// convolution, ReLU, and 2x average pooling; then global average pooling
// and one logistic-activated linear head per regression target.
struct Architecture {
  int input_side = kDefaultInputSide;
  int in_channels = 3;
  std::vector<int> block_widths = {8, 16, 32, 64};
  int heads = 1;
};

struct ParamSlice {
  std::string name;
  std::size_t offset = 0;
  std::size_t length = 0;
};

// Parameters are canonically float32 (that is what the model file stores);
// all arithmetic runs in double on widened copies.
struct RegressorState {
  Architecture arch;
  std::vector<float> theta;
  std::vector<double> moment1;
  std::vector<double> moment2;
  std::int64_t step_count = 0;
};

struct TrainConfig {
  double learning_rate = 1e-4;
  int batch_size = 32;  // 128 at full scale; 32 is the desk-scale default
  int epochs = 30;
  double weight_decay = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> head_weights = {1.0, 1.0};  // truncated to head count
  double beta1 = 0.9;
  double beta2 = 0.999;
};

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  std::optional<double> val_spearman;
};

struct TrainResult {
  RegressorState state;
  std::vector<EpochStats> history;
};

// One preprocessed sample with its per-head regression targets.
struct Example {
  const ModelInput* input = nullptr;
  std::vector<double> targets;
};

std::size_t param_count(const Architecture& arch);
std::vector<ParamSlice> param_slices(const Architecture& arch);

// Fan-in-scaled uniform weights, zero biases, zero optimizer moments.
RegressorState init_regressor(const Architecture& arch, std::uint64_t seed);

// Head outputs, each strictly inside (0,1).
std::vector<double> forward(const RegressorState& state, const ModelInput& input);

// Same network evaluated at an explicit 64-bit parameter vector; this is
// the entry point the finite-difference check perturbs.
std::vector<double> forward_at(const Architecture& arch,
                               std::span<const double> params,
                               const ModelInput& input);

// Weighted sum over heads of squared error.
double loss(std::span<const double> pred, std::span<const double> target,
            std::span<const double> head_weights);

// Exact reverse-mode gradient of the mean batch loss w.r.t. theta,
// accumulated over the batch in index order. Returns the mean batch loss.
double grad(const RegressorState& state, std::span<const Example> batch,
            std::span<const double> head_weights, std::vector<double>& grad_out);

// Decoupled-weight-decay Adam step: beta1=0.9, beta2=0.999, eps=1e-8, bias
// correction, and theta *= (1 - lr*lambda) applied separately from the
// adaptive update.
void adamw_step(RegressorState& state, std::span<const double> gradient,
                const TrainConfig& config);

// Shuffled (seeded) multi-epoch mini-batch AdamW over psi-preprocessed
// tuples. Records train loss per epoch and, when val_tuples is nonempty,
// validation Spearman between the dice head and true dice.
TrainResult train(const Architecture& arch,
                  std::span<const TrainingTuple> train_tuples,
                  std::span<const TrainingTuple> val_tuples,
                  const TrainConfig& config);

// forward(state, psi(image, pred_mask, prompt)).
std::vector<double> predict(const RegressorState& state, const Image& image,
                            const BinaryMask& pred_mask, const BoxPrompt& prompt);

// Model file: magic, format version, JSON architecture header, float32
// little-endian parameter payload, trailing CRC32.
void save_model(const RegressorState& state, const std::filesystem::path& path);
RegressorState load_model(const std::filesystem::path& path);

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t worst_index = 0;
  std::size_t checked = 0;
  bool pass = false;
};

// Central finite differences (step h) against the analytic gradient over
// every coordinate; relative error uses max(|a|,|b|) with an absolute floor
// so exactly-zero pairs compare clean.
GradCheckResult gradient_check(const RegressorState& state,
                               std::span<const Example> batch,
                               std::span<const double> head_weights,
                               double h = 1e-5, double tolerance = 1e-4);

}  // namespace segqual
