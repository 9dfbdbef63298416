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

#include "segqual/types.hpp"

namespace segqual {

inline constexpr int kDefaultInputSide = 244;

// Grayscale replicated to three identical channels; 3-channel input is
// returned unchanged.
Image expand_channels(const Image& img);

// Channel 0 becomes 0.5*old + 0.5*mask; channels 1 and 2 are copied
// bit-identically.
Image blend(const Image& img3, const BinaryMask& mask);

// Sub-raster [y0,y1) x [x0,x1), all channels.
Image crop(const Image& img, const BoxPrompt& box);

// Bilinear resample to side x side using half-pixel-center sampling with
// clamped edges. Values stay within [0,1].
Image resize(const Image& img, int side);

// The full preprocessing transform: blend the predicted mask into the
// red channel of the (3-channel) image, crop to the prompt box, resize.
ModelInput psi(const Image& img, const BinaryMask& mask, const BoxPrompt& box,
               int input_side = kDefaultInputSide);

}  // namespace segqual
