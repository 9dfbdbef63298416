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

#include "segqual/types.hpp"

namespace segqual {

// Binary netpbm (P5 grayscale / P6 color), 8-bit, maxval 255. Intensities
// map to [0,1] by v/255; writers quantize by round(v*255).

Image read_image_pnm(const std::filesystem::path& path);
void write_image_pnm(const Image& img, const std::filesystem::path& path);

// Masks are P5 files holding only 0 (background) and 255 (foreground).
// Any other sample value is a binarization error naming the file.
BinaryMask read_mask_pgm(const std::filesystem::path& path);
void write_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path);

}  // namespace segqual
