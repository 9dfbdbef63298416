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

#include "segqual/preprocess.hpp"

#include <algorithm>
#include <cmath>

namespace segqual {

Image expand_channels(const Image& img) {
  if (img.channels == 3) return img;
  if (img.channels != 1)
    throw InvalidInputError("expand_channels: channels must be 1 or 3");
  Image out(img.width, img.height, 3);
  const std::size_t plane = std::size_t(img.width) * img.height;
  for (int c = 0; c < 3; ++c)
    std::copy_n(img.values.data(), plane, out.values.data() + c * plane);
  return out;
}

Image blend(const Image& img3, const BinaryMask& mask) {
  if (img3.channels != 3) throw InvalidInputError("blend: expected a 3-channel image");
  if (img3.width != mask.width || img3.height != mask.height)
    throw InvalidInputError("blend: image/mask dimension mismatch");
  Image out = img3;
  const std::size_t plane = std::size_t(img3.width) * img3.height;
  for (std::size_t i = 0; i < plane; ++i)
    out.values[i] = 0.5f * img3.values[i] + 0.5f * float(mask.values[i]);
  return out;
}

Image crop(const Image& img, const BoxPrompt& box) {
  box.validate_within(img.width, img.height);
  Image out(box.width(), box.height(), img.channels);
  for (int c = 0; c < img.channels; ++c)
    for (int y = box.y0; y < box.y1; ++y)
      for (int x = box.x0; x < box.x1; ++x)
        out.set(c, x - box.x0, y - box.y0, img.at(c, x, y));
  return out;
}

namespace {

struct Tap {
  int lo;
  int hi;
  float w_hi;  // weight of the hi sample; lo gets 1 - w_hi
};

std::vector<Tap> make_taps(int src, int dst) {
  std::vector<Tap> taps(dst);
  const double scale = double(src) / double(dst);
  for (int d = 0; d < dst; ++d) {
    double s = (d + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, double(src - 1));
    const int lo = int(std::floor(s));
    const int hi = std::min(lo + 1, src - 1);
    taps[d] = {lo, hi, float(s - lo)};
  }
  return taps;
}

}  // namespace

Image resize(const Image& img, int side) {
  if (side < 1) throw InvalidInputError("resize: side must be >= 1");
  if (img.width == side && img.height == side) return img;
  const auto tx = make_taps(img.width, side);
  const auto ty = make_taps(img.height, side);
  Image out(side, side, img.channels);
  for (int c = 0; c < img.channels; ++c) {
    const float* src = img.plane(c);
    float* dst = out.plane(c);
    for (int y = 0; y < side; ++y) {
      const Tap& t = ty[y];
      const float* row_lo = src + std::size_t(t.lo) * img.width;
      const float* row_hi = src + std::size_t(t.hi) * img.width;
      for (int x = 0; x < side; ++x) {
        const Tap& u = tx[x];
        const float top = row_lo[u.lo] * (1.0f - u.w_hi) + row_lo[u.hi] * u.w_hi;
        const float bot = row_hi[u.lo] * (1.0f - u.w_hi) + row_hi[u.hi] * u.w_hi;
        dst[std::size_t(y) * side + x] = top * (1.0f - t.w_hi) + bot * t.w_hi;
      }
    }
  }
  return out;
}

ModelInput psi(const Image& img, const BinaryMask& mask, const BoxPrompt& box,
               int input_side) {
  return resize(crop(blend(expand_channels(img), mask), box), input_side);
}

}  // namespace segqual
