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
#include <string>
#include <vector>

#include "segqual/rng.hpp"
#include "segqual/types.hpp"

namespace segqual {

// One training example: raw image, box prompt, ground-truth mask, predicted
// mask, and the quality targets computed from them.
struct TrainingTuple {
  Image image;
  BoxPrompt prompt;
  BinaryMask gt_mask;
  BinaryMask pred_mask;
  double q_dice = 0.0;
  double q_hd = 0.0;  // Hausdorff normalized by the prompt diagonal, in [0,1]
  std::string sample_id;
  std::string object_id;
  std::string segmenter_id;
};

struct ManifestEntry {
  std::string sample_id;
  std::string object_id;
  std::string segmenter_id;
  std::string image_rel;
  std::string gt_rel;
  std::string pred_rel;
  BoxPrompt box;
};

struct DatasetManifest {
  int version = 1;
  int n = 0;  // image count
  int k = 1;  // objects per image
  int M = 0;  // segmenter count
  std::uint64_t seed = 0;
  std::vector<std::string> segmenter_ids;
  std::vector<ManifestEntry> entries;
};

struct Dataset {
  DatasetManifest manifest;
  std::vector<TrainingTuple> tuples;
};

// Severity distribution of a mock segmenter; severity is drawn from
// Beta(alpha, beta) per call, mirroring that the three SAM-style segmenters
// occupy distinct quality regimes.
struct SegmenterProfile {
  std::string id;
  double alpha;
  double beta;
};

const std::vector<SegmenterProfile>& default_profiles();

struct GenConfig {
  int n_images = 50;
  int objects_per_image = 1;
  int image_width = 96;
  int image_height = 96;
  std::uint64_t seed = 0;
  double prompt_jitter = 0.05;  // per-side jitter as a fraction of box size
  std::vector<SegmenterProfile> profiles = default_profiles();
  std::filesystem::path out_dir;
};

// Single connected blob: a randomized ellipse with low-frequency radial
// perturbation, occupying 2%-40% of the raster.
BinaryMask gen_shape(Rng& rng, int w, int h);

// Morphology with a Euclidean disk of the given radius (dx^2+dy^2 <= r^2).
// Erosion treats everything outside the raster as background.
BinaryMask dilate(const BinaryMask& mask, int radius);
BinaryMask erode(const BinaryMask& mask, int radius);

// Degrades a mask by a random composition of dilation/erosion, translation,
// and boundary flip noise; each magnitude scales with severity in [0,1].
// Severity 0 is the identity. A perturbation that would empty the mask is
// re-seeded with one pixel at the original centroid so the Hausdorff
// distance stays defined.
BinaryMask perturb(const BinaryMask& mask, Rng& rng, double severity);

// Draws a severity from the profile's Beta distribution and perturbs.
BinaryMask mock_segment(const SegmenterProfile& profile, const BinaryMask& gt,
                        Rng& rng);

// Looks up a registered profile by id.
const SegmenterProfile& find_profile(
    const std::vector<SegmenterProfile>& profiles, const std::string& id);

// Grayscale rendering of the ground-truth layout: distinct foreground /
// background mean intensities, a smooth illumination gradient, and Gaussian
// noise, quantized to the 8-bit grid so disk round-trips are exact.
Image render_image(const BinaryMask& fg_union, Rng& rng);

// Tight bounding box of the mask's foreground.
BoxPrompt tight_box(const BinaryMask& mask);

// Tight box jittered by up to jitter_frac of the box size per side, clamped
// in-bounds and kept nonempty.
BoxPrompt jittered_box(const BinaryMask& mask, Rng& rng, double jitter_frac);

// Quality targets for a (pred, gt, prompt) triple. q_hd falls back to 1
// when exactly one mask is empty and 0 when both are (Hausdorff itself is
// undefined there).
std::pair<double, double> quality_scores(const BinaryMask& pred,
                                         const BinaryMask& gt,
                                         const BoxPrompt& prompt);

TrainingTuple build_tuple(Image image, BinaryMask gt, BinaryMask pred,
                          BoxPrompt prompt, std::string sample_id = "",
                          std::string object_id = "",
                          std::string segmenter_id = "");

// Generates n*k*M tuples, writes them plus manifest.json under
// config.out_dir, and returns the in-memory dataset. Fully reproducible
// from (config, seed).
Dataset gen_dataset(const GenConfig& config);

// Loads a dataset directory; q values are recomputed from the raw masks,
// never trusted from disk.
Dataset load_dataset(const std::filesystem::path& dir);

// Deterministic split by image: tuple indices grouped so no sample_id
// appears on both sides.
struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
};
SplitIndices split_by_image(const Dataset& ds, double val_fraction,
                            std::uint64_t split_seed);

}  // namespace segqual
