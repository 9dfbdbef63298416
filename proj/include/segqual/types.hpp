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
#include <vector>

#include "segqual/errors.hpp"

namespace segqual {

// Binary raster over {0,1}, row-major, y*width + x.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;

  BinaryMask() = default;
  BinaryMask(int w, int h) : width(w), height(h), values(size_t(w) * h, 0) {
    if (w < 1 || h < 1) throw InvalidInputError("mask dimensions must be >= 1");
  }

  std::uint8_t at(int x, int y) const { return values[size_t(y) * width + x]; }
  void set(int x, int y, std::uint8_t v) { values[size_t(y) * width + x] = v; }

  std::size_t foreground_count() const {
    std::size_t n = 0;
    for (auto v : values) n += v;
    return n;
  }
  bool empty_foreground() const { return foreground_count() == 0; }

  bool same_shape(const BinaryMask& o) const {
    return width == o.width && height == o.height;
  }
  bool operator==(const BinaryMask& o) const = default;
};

// Planar float raster with values in [0,1]: values[c*w*h + y*w + x].
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> values;

  Image() = default;
  Image(int w, int h, int c)
      : width(w), height(h), channels(c), values(size_t(w) * h * c, 0.0f) {
    if (w < 1 || h < 1) throw InvalidInputError("image dimensions must be >= 1");
    if (c != 1 && c != 3) throw InvalidInputError("channels must be 1 or 3");
  }

  float at(int c, int x, int y) const {
    return values[(size_t(c) * height + y) * width + x];
  }
  void set(int c, int x, int y, float v) {
    values[(size_t(c) * height + y) * width + x] = v;
  }
  const float* plane(int c) const { return values.data() + size_t(c) * width * height; }
  float* plane(int c) { return values.data() + size_t(c) * width * height; }

  bool operator==(const Image& o) const = default;
};

// Axis-aligned half-open rectangle [x0,x1) x [y0,y1) in pixel coordinates.
struct BoxPrompt {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }

  void validate_within(int img_w, int img_h) const {
    if (!(0 <= x0 && x0 < x1 && x1 <= img_w && 0 <= y0 && y0 < y1 && y1 <= img_h))
      throw InvalidInputError("box prompt out of bounds or degenerate");
  }

  bool operator==(const BoxPrompt& o) const = default;
};

// Square 3-channel raster the regressor consumes; produced by psi().
using ModelInput = Image;

}  // namespace segqual
