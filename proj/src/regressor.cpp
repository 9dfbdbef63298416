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

#include "segqual/regressor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>

#include <zlib.h>
#include <nlohmann/json.hpp>

#include "segqual/metrics.hpp"
#include "segqual/rng.hpp"

namespace segqual {

namespace {

constexpr char kModelMagic[8] = {'S', 'E', 'G', 'Q', 'R', 'G', 'N', '1'};
constexpr std::uint32_t kModelVersion = 1;

constexpr std::uint64_t kSeedSlotInit = (1ULL << 33);
constexpr std::uint64_t kSeedSlotShuffle = (1ULL << 33) + 1;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct BlockDims {
  int side = 0;      // spatial side entering the block
  int in_width = 0;  // channels entering the block
  int out_width = 0;
  int pooled = 0;  // spatial side after 2x average pooling
};

// Resolved layer geometry plus parameter offsets for one architecture.
struct Plan {
  Architecture arch;
  std::vector<BlockDims> blocks;
  int feat_width = 0;  // channels entering global average pooling
  int feat_side = 0;
  std::size_t head_offset = 0;  // theta offset of the first head
  std::size_t total_params = 0;

  explicit Plan(const Architecture& a) : arch(a) {
    if (a.input_side < 1) throw InvalidInputError("architecture: input_side must be >= 1");
    if (a.in_channels != 3) throw InvalidInputError("architecture: in_channels must be 3");
    if (a.heads != 1 && a.heads != 2)
      throw InvalidInputError("architecture: heads must be 1 or 2");
    int side = a.input_side;
    int width = a.in_channels;
    std::size_t off = 0;
    for (int w : a.block_widths) {
      if (w < 1) throw InvalidInputError("architecture: block width must be >= 1");
      BlockDims d;
      d.side = side;
      d.in_width = width;
      d.out_width = w;
      d.pooled = side / 2;
      if (d.pooled < 1)
        throw InvalidInputError("architecture: input side too small for block count");
      blocks.push_back(d);
      off += std::size_t(w) * width * 9 + std::size_t(w);
      side = d.pooled;
      width = w;
    }
    feat_width = width;
    feat_side = side;
    head_offset = off;
    total_params = off + std::size_t(a.heads) * (std::size_t(width) + 1);
  }
};

// Scratch activations reused across samples.
struct Workspace {
  // Per block: the block's input planes and the pre-activation conv output.
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> conv;
  std::vector<double> features;  // GAP input (last pooled planes) lives in inputs.back()
  std::vector<double> head_pre;
  std::vector<double> head_out;
  // Backward scratch.
  std::vector<std::vector<double>> d_inputs;
  std::vector<std::vector<double>> d_conv;

  explicit Workspace(const Plan& p) {
    inputs.resize(p.blocks.size() + 1);
    d_inputs.resize(p.blocks.size() + 1);
    conv.resize(p.blocks.size());
    d_conv.resize(p.blocks.size());
    inputs[0].resize(std::size_t(p.arch.in_channels) * p.arch.input_side * p.arch.input_side);
    d_inputs[0].resize(inputs[0].size());
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      const auto& d = p.blocks[b];
      conv[b].resize(std::size_t(d.out_width) * d.side * d.side);
      d_conv[b].resize(conv[b].size());
      inputs[b + 1].resize(std::size_t(d.out_width) * d.pooled * d.pooled);
      d_inputs[b + 1].resize(inputs[b + 1].size());
    }
    features.resize(p.feat_width);
    head_pre.resize(p.arch.heads);
    head_out.resize(p.arch.heads);
  }
};

// out[y][x] += w * in[y+ky-1][x+kx-1] over the in-bounds range.
inline void conv_accumulate(const double* in, double* out, int side, int ky,
                            int kx, double w) {
  const int y_lo = std::max(0, 1 - ky);
  const int y_hi = std::min(side, side + 1 - ky);
  const int x_lo = std::max(0, 1 - kx);
  const int x_hi = std::min(side, side + 1 - kx);
  for (int y = y_lo; y < y_hi; ++y) {
    const double* src = in + std::size_t(y + ky - 1) * side + (kx - 1);
    double* dst = out + std::size_t(y) * side;
    for (int x = x_lo; x < x_hi; ++x) dst[x] += w * src[x];
  }
}

// Accumulates sum over the valid range of a[y][x] * b[y+ky-1][x+kx-1].
inline double conv_correlate(const double* a, const double* b, int side,
                             int ky, int kx) {
  const int y_lo = std::max(0, 1 - ky);
  const int y_hi = std::min(side, side + 1 - ky);
  const int x_lo = std::max(0, 1 - kx);
  const int x_hi = std::min(side, side + 1 - kx);
  double acc = 0.0;
  for (int y = y_lo; y < y_hi; ++y) {
    const double* pa = a + std::size_t(y) * side;
    const double* pb = b + std::size_t(y + ky - 1) * side + (kx - 1);
    for (int x = x_lo; x < x_hi; ++x) acc += pa[x] * pb[x];
  }
  return acc;
}

// dIn[y+ky-1][x+kx-1] += w * dOut[y][x] over the same valid range.
inline void conv_scatter(const double* d_out, double* d_in, int side, int ky,
                         int kx, double w) {
  const int y_lo = std::max(0, 1 - ky);
  const int y_hi = std::min(side, side + 1 - ky);
  const int x_lo = std::max(0, 1 - kx);
  const int x_hi = std::min(side, side + 1 - kx);
  for (int y = y_lo; y < y_hi; ++y) {
    const double* src = d_out + std::size_t(y) * side;
    double* dst = d_in + std::size_t(y + ky - 1) * side + (kx - 1);
    for (int x = x_lo; x < x_hi; ++x) dst[x] += w * src[x];
  }
}

void run_forward(const Plan& p, std::span<const double> params,
                 const ModelInput& input, Workspace& ws) {
  if (input.channels != 3 || input.width != p.arch.input_side ||
      input.height != p.arch.input_side)
    throw InvalidInputError("forward: input does not match the configured resolution");

  for (std::size_t i = 0; i < ws.inputs[0].size(); ++i)
    ws.inputs[0][i] = double(input.values[i]);

  std::size_t off = 0;
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    const auto& d = p.blocks[b];
    const std::size_t plane = std::size_t(d.side) * d.side;
    const double* w = params.data() + off;
    const double* bias = w + std::size_t(d.out_width) * d.in_width * 9;

    for (int co = 0; co < d.out_width; ++co) {
      double* out = ws.conv[b].data() + std::size_t(co) * plane;
      std::fill_n(out, plane, bias[co]);
      for (int ci = 0; ci < d.in_width; ++ci) {
        const double* in = ws.inputs[b].data() + std::size_t(ci) * plane;
        const double* k = w + (std::size_t(co) * d.in_width + ci) * 9;
        for (int ky = 0; ky < 3; ++ky)
          for (int kx = 0; kx < 3; ++kx)
            conv_accumulate(in, out, d.side, ky, kx, k[std::size_t(ky) * 3 + kx]);
      }
    }

    // ReLU fused into 2x average pooling (windows fully inside; an odd
    // trailing row/column is dropped).
    const std::size_t pooled_plane = std::size_t(d.pooled) * d.pooled;
    for (int co = 0; co < d.out_width; ++co) {
      const double* z = ws.conv[b].data() + std::size_t(co) * plane;
      double* pooled = ws.inputs[b + 1].data() + std::size_t(co) * pooled_plane;
      for (int y = 0; y < d.pooled; ++y) {
        const double* r0 = z + std::size_t(2 * y) * d.side;
        const double* r1 = r0 + d.side;
        for (int x = 0; x < d.pooled; ++x) {
          const double s = std::max(0.0, r0[2 * x]) + std::max(0.0, r0[2 * x + 1]) +
                           std::max(0.0, r1[2 * x]) + std::max(0.0, r1[2 * x + 1]);
          pooled[std::size_t(y) * d.pooled + x] = 0.25 * s;
        }
      }
    }
    off += std::size_t(d.out_width) * d.in_width * 9 + std::size_t(d.out_width);
  }

  const std::size_t feat_plane = std::size_t(p.feat_side) * p.feat_side;
  const auto& feat_in = ws.inputs.back();
  for (int c = 0; c < p.feat_width; ++c) {
    const double* plane = feat_in.data() + std::size_t(c) * feat_plane;
    double acc = 0.0;
    for (std::size_t i = 0; i < feat_plane; ++i) acc += plane[i];
    ws.features[c] = acc / double(feat_plane);
  }

  const double* hw = params.data() + p.head_offset;
  for (int h = 0; h < p.arch.heads; ++h) {
    const double* wvec = hw + std::size_t(h) * (p.feat_width + 1);
    double u = wvec[p.feat_width];  // bias
    for (int c = 0; c < p.feat_width; ++c) u += wvec[c] * ws.features[c];
    ws.head_pre[h] = u;
    ws.head_out[h] = sigmoid(u);
  }
}

// Backward pass for one sample; accumulates dL/dtheta into grad_out.
// d_head holds dL/d(head output).
void run_backward(const Plan& p, std::span<const double> params,
                  std::span<const double> d_head, Workspace& ws,
                  double* grad_out) {
  // Heads and global average pooling.
  std::fill(ws.d_inputs.back().begin(), ws.d_inputs.back().end(), 0.0);
  const double* hw = params.data() + p.head_offset;
  double* hg = grad_out + p.head_offset;
  std::vector<double> d_feat(p.feat_width, 0.0);
  for (int h = 0; h < p.arch.heads; ++h) {
    const double y = ws.head_out[h];
    const double du = d_head[h] * y * (1.0 - y);
    const double* wvec = hw + std::size_t(h) * (p.feat_width + 1);
    double* gvec = hg + std::size_t(h) * (p.feat_width + 1);
    for (int c = 0; c < p.feat_width; ++c) {
      gvec[c] += du * ws.features[c];
      d_feat[c] += du * wvec[c];
    }
    gvec[p.feat_width] += du;
  }
  const std::size_t feat_plane = std::size_t(p.feat_side) * p.feat_side;
  for (int c = 0; c < p.feat_width; ++c) {
    const double v = d_feat[c] / double(feat_plane);
    double* plane = ws.d_inputs.back().data() + std::size_t(c) * feat_plane;
    for (std::size_t i = 0; i < feat_plane; ++i) plane[i] = v;
  }

  // Blocks in reverse.
  std::size_t off = p.head_offset;
  for (std::size_t bi = p.blocks.size(); bi-- > 0;) {
    const auto& d = p.blocks[bi];
    off -= std::size_t(d.out_width) * d.in_width * 9 + std::size_t(d.out_width);
    const double* w = params.data() + off;
    double* gw = grad_out + off;
    double* gbias = gw + std::size_t(d.out_width) * d.in_width * 9;

    const std::size_t plane = std::size_t(d.side) * d.side;
    const std::size_t pooled_plane = std::size_t(d.pooled) * d.pooled;

    // Un-pool into dz, gating by the ReLU mask from the stored conv output.
    auto& dz = ws.d_conv[bi];
    std::fill(dz.begin(), dz.end(), 0.0);
    for (int co = 0; co < d.out_width; ++co) {
      const double* dp = ws.d_inputs[bi + 1].data() + std::size_t(co) * pooled_plane;
      const double* z = ws.conv[bi].data() + std::size_t(co) * plane;
      double* dzp = dz.data() + std::size_t(co) * plane;
      for (int y = 0; y < d.pooled; ++y) {
        for (int x = 0; x < d.pooled; ++x) {
          const double g = 0.25 * dp[std::size_t(y) * d.pooled + x];
          const std::size_t i00 = std::size_t(2 * y) * d.side + 2 * x;
          const std::size_t i10 = i00 + d.side;
          if (z[i00] > 0.0) dzp[i00] = g;
          if (z[i00 + 1] > 0.0) dzp[i00 + 1] = g;
          if (z[i10] > 0.0) dzp[i10] = g;
          if (z[i10 + 1] > 0.0) dzp[i10 + 1] = g;
        }
      }
    }

    // Weight/bias gradients and, except at the first block (the gradient
    // w.r.t. the raw image is never consumed), the block-input gradient.
    auto& din = ws.d_inputs[bi];
    std::fill(din.begin(), din.end(), 0.0);
    const bool need_din = bi > 0;
    for (int co = 0; co < d.out_width; ++co) {
      const double* dzp = dz.data() + std::size_t(co) * plane;
      double bias_acc = 0.0;
      for (std::size_t i = 0; i < plane; ++i) bias_acc += dzp[i];
      gbias[co] += bias_acc;
      for (int ci = 0; ci < d.in_width; ++ci) {
        const double* in = ws.inputs[bi].data() + std::size_t(ci) * plane;
        double* dinp = din.data() + std::size_t(ci) * plane;
        const double* k = w + (std::size_t(co) * d.in_width + ci) * 9;
        double* gk = gw + (std::size_t(co) * d.in_width + ci) * 9;
        for (int ky = 0; ky < 3; ++ky) {
          for (int kx = 0; kx < 3; ++kx) {
            gk[std::size_t(ky) * 3 + kx] += conv_correlate(dzp, in, d.side, ky, kx);
            if (need_din)
              conv_scatter(dzp, dinp, d.side, ky, kx, k[std::size_t(ky) * 3 + kx]);
          }
        }
      }
    }
  }
}

std::vector<double> widen(std::span<const float> theta) {
  std::vector<double> out(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) out[i] = double(theta[i]);
  return out;
}

std::vector<double> resolve_head_weights(std::span<const double> head_weights,
                                         int heads) {
  std::vector<double> hw(heads, 1.0);
  for (int h = 0; h < heads && h < int(head_weights.size()); ++h)
    hw[h] = head_weights[h];
  return hw;
}

}  // namespace

std::size_t param_count(const Architecture& arch) { return Plan(arch).total_params; }

std::vector<ParamSlice> param_slices(const Architecture& arch) {
  const Plan p(arch);
  std::vector<ParamSlice> slices;
  std::size_t off = 0;
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    const auto& d = p.blocks[b];
    const std::size_t wlen = std::size_t(d.out_width) * d.in_width * 9;
    slices.push_back({"block" + std::to_string(b) + ".weight", off, wlen});
    slices.push_back({"block" + std::to_string(b) + ".bias", off + wlen,
                      std::size_t(d.out_width)});
    off += wlen + std::size_t(d.out_width);
  }
  for (int h = 0; h < p.arch.heads; ++h) {
    slices.push_back({"head" + std::to_string(h) + ".weight", off,
                      std::size_t(p.feat_width)});
    slices.push_back({"head" + std::to_string(h) + ".bias",
                      off + std::size_t(p.feat_width), 1});
    off += std::size_t(p.feat_width) + 1;
  }
  return slices;
}

RegressorState init_regressor(const Architecture& arch, std::uint64_t seed) {
  const Plan p(arch);
  RegressorState state;
  state.arch = arch;
  state.theta.assign(p.total_params, 0.0f);
  state.moment1.assign(p.total_params, 0.0);
  state.moment2.assign(p.total_params, 0.0);
  Rng rng(derive_seed(seed, 0, 0, kSeedSlotInit));
  const auto fill_uniform = [&](std::size_t offset, std::size_t length,
                                std::size_t fan_in) {
    const double limit = std::sqrt(6.0 / double(fan_in));
    for (std::size_t i = 0; i < length; ++i)
      state.theta[offset + i] = float(rng.uniform(-limit, limit));
  };
  std::size_t off = 0;
  for (const auto& d : p.blocks) {
    const std::size_t wlen = std::size_t(d.out_width) * d.in_width * 9;
    fill_uniform(off, wlen, std::size_t(d.in_width) * 9);  // biases stay zero
    off += wlen + std::size_t(d.out_width);
  }
  for (int h = 0; h < arch.heads; ++h) {
    fill_uniform(off, std::size_t(p.feat_width), std::size_t(p.feat_width));
    off += std::size_t(p.feat_width) + 1;
  }
  return state;
}

std::vector<double> forward_at(const Architecture& arch,
                               std::span<const double> params,
                               const ModelInput& input) {
  const Plan p(arch);
  if (params.size() != p.total_params)
    throw InvalidInputError("forward_at: parameter vector length mismatch");
  Workspace ws(p);
  run_forward(p, params, input, ws);
  return ws.head_out;
}

std::vector<double> forward(const RegressorState& state, const ModelInput& input) {
  return forward_at(state.arch, widen(state.theta), input);
}

double loss(std::span<const double> pred, std::span<const double> target,
            std::span<const double> head_weights) {
  if (pred.size() != target.size())
    throw InvalidInputError("loss: head count mismatch");
  double acc = 0.0;
  for (std::size_t h = 0; h < pred.size(); ++h) {
    const double e = pred[h] - target[h];
    const double w = h < head_weights.size() ? head_weights[h] : 1.0;
    acc += w * e * e;
  }
  return acc;
}

double grad(const RegressorState& state, std::span<const Example> batch,
            std::span<const double> head_weights, std::vector<double>& grad_out) {
  if (batch.empty()) throw InvalidInputError("grad: batch must be nonempty");
  const Plan p(state.arch);
  const auto params = widen(state.theta);
  const auto hw = resolve_head_weights(head_weights, state.arch.heads);

  grad_out.assign(p.total_params, 0.0);
  Workspace ws(p);
  std::vector<double> d_head(state.arch.heads);
  double loss_sum = 0.0;
  for (const Example& ex : batch) {
    if (int(ex.targets.size()) != state.arch.heads)
      throw InvalidInputError("grad: target count does not match head count");
    run_forward(p, params, *ex.input, ws);
    for (int h = 0; h < state.arch.heads; ++h) {
      const double e = ws.head_out[h] - ex.targets[h];
      loss_sum += hw[h] * e * e;
      d_head[h] = 2.0 * hw[h] * e;
    }
    run_backward(p, params, d_head, ws, grad_out.data());
  }
  const double inv_n = 1.0 / double(batch.size());
  for (double& g : grad_out) g *= inv_n;
  return loss_sum * inv_n;
}

void adamw_step(RegressorState& state, std::span<const double> gradient,
                const TrainConfig& config) {
  if (gradient.size() != state.theta.size())
    throw InvalidInputError("adamw_step: gradient length mismatch");
  for (const double g : gradient)
    if (!std::isfinite(g))
      throw DivergenceError("adamw_step: non-finite gradient; training diverged");

  const double beta1 = config.beta1;
  const double beta2 = config.beta2;
  constexpr double eps = 1e-8;
  state.step_count += 1;
  const double bc1 = 1.0 - std::pow(beta1, double(state.step_count));
  const double bc2 = 1.0 - std::pow(beta2, double(state.step_count));
  const double decay = 1.0 - config.learning_rate * config.weight_decay;
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    const double g = gradient[i];
    state.moment1[i] = beta1 * state.moment1[i] + (1.0 - beta1) * g;
    state.moment2[i] = beta2 * state.moment2[i] + (1.0 - beta2) * g * g;
    const double m_hat = state.moment1[i] / bc1;
    const double v_hat = state.moment2[i] / bc2;
    const double theta = double(state.theta[i]) * decay -
                         config.learning_rate * m_hat / (std::sqrt(v_hat) + eps);
    state.theta[i] = float(theta);
  }
}

namespace {

std::vector<double> tuple_targets(const TrainingTuple& t, int heads) {
  if (heads == 1) return {t.q_dice};
  return {t.q_dice, t.q_hd};
}

}  // namespace

TrainResult train(const Architecture& arch,
                  std::span<const TrainingTuple> train_tuples,
                  std::span<const TrainingTuple> val_tuples,
                  const TrainConfig& config) {
  if (train_tuples.empty()) throw InvalidInputError("train: no training tuples");
  if (config.learning_rate <= 0.0 || config.batch_size < 1 || config.epochs < 1)
    throw InvalidInputError("train: invalid config");

  // psi has no trainable parameters; preprocess every tuple once up front.
  const auto preprocess_all = [&](std::span<const TrainingTuple> tuples) {
    std::vector<ModelInput> inputs;
    inputs.reserve(tuples.size());
    for (const auto& t : tuples)
      inputs.push_back(psi(t.image, t.pred_mask, t.prompt, arch.input_side));
    return inputs;
  };
  const std::vector<ModelInput> train_inputs = preprocess_all(train_tuples);
  const std::vector<ModelInput> val_inputs = preprocess_all(val_tuples);

  TrainResult result;
  result.state = init_regressor(arch, config.seed);
  const auto hw = resolve_head_weights(config.head_weights, arch.heads);

  std::vector<std::size_t> order(train_tuples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> gradient;
  std::vector<Example> batch;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    Rng shuffle_rng(derive_seed(config.seed, std::uint64_t(epoch), 0, kSeedSlotShuffle));
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[std::size_t(shuffle_rng.below(i))]);

    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += std::size_t(config.batch_size)) {
      const std::size_t stop = std::min(order.size(), start + std::size_t(config.batch_size));
      batch.clear();
      for (std::size_t i = start; i < stop; ++i)
        batch.push_back({&train_inputs[order[i]],
                         tuple_targets(train_tuples[order[i]], arch.heads)});
      const double batch_loss = grad(result.state, batch, hw, gradient);
      if (!std::isfinite(batch_loss))
        throw DivergenceError("train: non-finite loss at epoch " + std::to_string(epoch));
      loss_sum += batch_loss * double(stop - start);
      adamw_step(result.state, gradient, config);
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = loss_sum / double(order.size());
    if (!val_tuples.empty()) {
      std::vector<double> pred, truth;
      pred.reserve(val_tuples.size());
      truth.reserve(val_tuples.size());
      const auto params = widen(result.state.theta);
      const Plan p(arch);
      Workspace ws(p);
      for (std::size_t i = 0; i < val_tuples.size(); ++i) {
        run_forward(p, params, val_inputs[i], ws);
        pred.push_back(ws.head_out[0]);
        truth.push_back(val_tuples[i].q_dice);
      }
      stats.val_spearman = spearman(truth, pred);
    }
    result.history.push_back(std::move(stats));
  }
  return result;
}

std::vector<double> predict(const RegressorState& state, const Image& image,
                            const BinaryMask& pred_mask, const BoxPrompt& prompt) {
  return forward(state, psi(image, pred_mask, prompt, state.arch.input_side));
}

namespace {

void put_u32(std::string& buf, std::uint32_t v) {
  buf.push_back(char(v & 0xFF));
  buf.push_back(char((v >> 8) & 0xFF));
  buf.push_back(char((v >> 16) & 0xFF));
  buf.push_back(char((v >> 24) & 0xFF));
}

std::uint32_t get_u32(const std::string& buf, std::size_t off) {
  return std::uint32_t(std::uint8_t(buf[off])) |
         std::uint32_t(std::uint8_t(buf[off + 1])) << 8 |
         std::uint32_t(std::uint8_t(buf[off + 2])) << 16 |
         std::uint32_t(std::uint8_t(buf[off + 3])) << 24;
}

}  // namespace

void save_model(const RegressorState& state, const std::filesystem::path& path) {
  nlohmann::ordered_json header;
  header["input_side"] = state.arch.input_side;
  header["in_channels"] = state.arch.in_channels;
  header["block_widths"] = state.arch.block_widths;
  header["heads"] = state.arch.heads;
  header["param_count"] = state.theta.size();
  const std::string header_str = header.dump();

  std::string buf;
  buf.append(kModelMagic, sizeof kModelMagic);
  put_u32(buf, kModelVersion);
  put_u32(buf, std::uint32_t(header_str.size()));
  buf += header_str;
  for (const float f : state.theta) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    put_u32(buf, bits);
  }
  const auto digest = std::uint32_t(
      crc32(0, reinterpret_cast<const Bytef*>(buf.data()), uInt(buf.size())));
  put_u32(buf, digest);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(buf.data(), std::streamsize(buf.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

RegressorState load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());

  if (buf.size() < sizeof kModelMagic + 12)
    throw ParseError("model file " + path.string() + " is truncated");
  if (std::memcmp(buf.data(), kModelMagic, sizeof kModelMagic) != 0)
    throw ParseError("model file " + path.string() + " has wrong magic bytes");
  const std::uint32_t version = get_u32(buf, 8);
  if (version != kModelVersion)
    throw ParseError("model file " + path.string() + " has unsupported format version " +
                     std::to_string(version));

  const std::uint32_t stored_crc = get_u32(buf, buf.size() - 4);
  const auto digest = std::uint32_t(crc32(
      0, reinterpret_cast<const Bytef*>(buf.data()), uInt(buf.size() - 4)));
  if (digest != stored_crc)
    throw ParseError("model file " + path.string() + " failed its checksum (corrupt or truncated)");

  const std::uint32_t header_len = get_u32(buf, 12);
  if (buf.size() < 16 + header_len + 4)
    throw ParseError("model file " + path.string() + " is truncated");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(buf.substr(16, header_len));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model file " + path.string() + " has a malformed header: " + e.what());
  }

  RegressorState state;
  try {
    state.arch.input_side = header.at("input_side").get<int>();
    state.arch.in_channels = header.at("in_channels").get<int>();
    state.arch.block_widths = header.at("block_widths").get<std::vector<int>>();
    state.arch.heads = header.at("heads").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model header in " + path.string() + " missing field: " + e.what());
  }
  const std::size_t expect = param_count(state.arch);
  if (header.at("param_count").get<std::size_t>() != expect)
    throw ParseError("model header in " + path.string() + " declares a wrong parameter count");
  const std::size_t payload = buf.size() - 16 - header_len - 4;
  if (payload != expect * 4)
    throw ParseError("model file " + path.string() + " has a wrong payload size");

  state.theta.resize(expect);
  for (std::size_t i = 0; i < expect; ++i) {
    const std::uint32_t bits = get_u32(buf, 16 + header_len + i * 4);
    std::memcpy(&state.theta[i], &bits, 4);
  }
  state.moment1.assign(expect, 0.0);
  state.moment2.assign(expect, 0.0);
  state.step_count = 0;
  return state;
}

GradCheckResult gradient_check(const RegressorState& state,
                               std::span<const Example> batch,
                               std::span<const double> head_weights,
                               double h, double tolerance) {
  const Plan p(state.arch);
  const auto hw = resolve_head_weights(head_weights, state.arch.heads);
  std::vector<double> analytic;
  grad(state, batch, hw, analytic);

  std::vector<double> params = widen(state.theta);
  const auto batch_loss_at = [&](std::span<const double> theta) {
    double acc = 0.0;
    Workspace ws(p);
    for (const Example& ex : batch) {
      run_forward(p, theta, *ex.input, ws);
      acc += loss(ws.head_out, ex.targets, hw);
    }
    return acc / double(batch.size());
  };

  GradCheckResult result;
  result.checked = params.size();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + h;
    const double up = batch_loss_at(params);
    params[i] = saved - h;
    const double down = batch_loss_at(params);
    params[i] = saved;
    const double fd = (up - down) / (2.0 * h);
    const double denom = std::max({std::abs(analytic[i]), std::abs(fd), 1e-6});
    const double rel = std::abs(analytic[i] - fd) / denom;
    if (rel > result.max_rel_error) {
      result.max_rel_error = rel;
      result.worst_index = i;
    }
  }
  result.pass = result.max_rel_error < tolerance;
  return result;
}

}  // namespace segqual
