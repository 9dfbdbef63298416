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

#include "segqual/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "segqual/metrics.hpp"
#include "segqual/netpbm.hpp"

namespace segqual {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;

// Reserved segmenter-slot values in derive_seed for randomness that is not
// tied to a particular segmenter.
constexpr std::uint64_t kSeedSlotShape = 1ULL << 32;
constexpr std::uint64_t kSeedSlotImage = (1ULL << 32) + 1;
constexpr std::uint64_t kSeedSlotPrompt = (1ULL << 32) + 2;

// Perturbation magnitudes at severity 1, in units of the mask's equivalent
// radius. Calibrated so that severity 1 drives dice below 0.5 in well over
// 90% of draws while mid severities stay clearly apart (see the Monte-Carlo
// tests in test_datagen.cpp).
constexpr double kMaxShiftFactor = 2.4;
constexpr double kMaxMorphFactor = 1.15;
constexpr double kMaxFlipRate = 0.55;

std::size_t largest_component(const BinaryMask& m, BinaryMask* out) {
  *out = BinaryMask(m.width, m.height);
  std::vector<std::int32_t> label(m.values.size(), 0);
  std::int32_t next = 0;
  std::size_t best_size = 0;
  std::int32_t best_label = 0;
  std::deque<std::pair<int, int>> queue;
  for (int sy = 0; sy < m.height; ++sy) {
    for (int sx = 0; sx < m.width; ++sx) {
      const std::size_t si = std::size_t(sy) * m.width + sx;
      if (!m.values[si] || label[si]) continue;
      ++next;
      std::size_t size = 0;
      label[si] = next;
      queue.push_back({sx, sy});
      while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        ++size;
        const int nx[4] = {x - 1, x + 1, x, x};
        const int ny[4] = {y, y, y - 1, y + 1};
        for (int d = 0; d < 4; ++d) {
          if (nx[d] < 0 || nx[d] >= m.width || ny[d] < 0 || ny[d] >= m.height)
            continue;
          const std::size_t ni = std::size_t(ny[d]) * m.width + nx[d];
          if (m.values[ni] && !label[ni]) {
            label[ni] = next;
            queue.push_back({nx[d], ny[d]});
          }
        }
      }
      if (size > best_size) {
        best_size = size;
        best_label = next;
      }
    }
  }
  for (std::size_t i = 0; i < label.size(); ++i)
    out->values[i] = label[i] == best_label ? 1 : 0;
  return best_size;
}

std::pair<double, double> centroid(const BinaryMask& m) {
  double sx = 0.0, sy = 0.0, n = 0.0;
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x)
      if (m.at(x, y)) {
        sx += x;
        sy += y;
        n += 1.0;
      }
  return {sx / n, sy / n};
}

constexpr double kEdtInf = 1e20;

// Felzenszwalb-Huttenlocher 1D squared distance transform.
void edt_1d(const std::vector<double>& f, std::vector<double>& d, int n) {
  static thread_local std::vector<int> v;
  static thread_local std::vector<double> z;
  v.assign(std::size_t(n), 0);
  z.assign(std::size_t(n) + 1, 0.0);
  int k = 0;
  v[0] = 0;
  z[0] = -kEdtInf;
  z[1] = kEdtInf;
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
               (2.0 * q - 2.0 * v[k]);
    while (s <= z[k]) {
      --k;
      s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
          (2.0 * q - 2.0 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kEdtInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < double(q)) ++k;
    const double dq = double(q) - v[k];
    d[std::size_t(q)] = dq * dq + f[v[k]];
  }
}

// Exact squared Euclidean distance to the nearest seed pixel.
std::vector<double> edt_squared(const BinaryMask& m, bool seed_value) {
  const int w = m.width, h = m.height;
  std::vector<double> dist(std::size_t(w) * h);
  for (std::size_t i = 0; i < dist.size(); ++i)
    dist[i] = (m.values[i] != 0) == seed_value ? 0.0 : kEdtInf;
  std::vector<double> f(std::size_t(std::max(w, h)));
  std::vector<double> d(std::size_t(std::max(w, h)));
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) f[std::size_t(y)] = dist[std::size_t(y) * w + x];
    edt_1d(f, d, h);
    for (int y = 0; y < h; ++y) dist[std::size_t(y) * w + x] = d[std::size_t(y)];
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) f[std::size_t(x)] = dist[std::size_t(y) * w + x];
    edt_1d(f, d, w);
    for (int x = 0; x < w; ++x) dist[std::size_t(y) * w + x] = d[std::size_t(x)];
  }
  return dist;
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, int radius) {
  if (radius < 0) throw InvalidInputError("dilate: radius must be >= 0");
  if (radius == 0 || mask.empty_foreground()) return mask;
  const auto dist = edt_squared(mask, true);
  BinaryMask out(mask.width, mask.height);
  const double r2 = double(radius) * radius;
  for (std::size_t i = 0; i < dist.size(); ++i)
    out.values[i] = dist[i] <= r2 ? 1 : 0;
  return out;
}

BinaryMask erode(const BinaryMask& mask, int radius) {
  if (radius < 0) throw InvalidInputError("erode: radius must be >= 0");
  if (radius == 0) return mask;
  const auto dist = edt_squared(mask, false);
  BinaryMask out(mask.width, mask.height);
  const double r2 = double(radius) * radius;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      const std::size_t i = std::size_t(y) * mask.width + x;
      // Outside the raster counts as background.
      const int border = std::min(std::min(x + 1, mask.width - x),
                                  std::min(y + 1, mask.height - y));
      out.values[i] =
          mask.values[i] && dist[i] > r2 && double(border) > radius ? 1 : 0;
    }
  }
  return out;
}

namespace {

BinaryMask morph_disk(const BinaryMask& m, int radius, bool dilation) {
  if (radius <= 0) return m;
  return dilation ? dilate(m, radius) : erode(m, radius);
}

BinaryMask translate(const BinaryMask& m, int dx, int dy) {
  if (dx == 0 && dy == 0) return m;
  BinaryMask out(m.width, m.height);
  for (int y = 0; y < m.height; ++y) {
    const int sy = y - dy;
    if (sy < 0 || sy >= m.height) continue;
    for (int x = 0; x < m.width; ++x) {
      const int sx = x - dx;
      if (sx >= 0 && sx < m.width) out.set(x, y, m.at(sx, sy));
    }
  }
  return out;
}

BinaryMask flip_boundary(const BinaryMask& m, Rng& rng, double rate) {
  if (rate <= 0.0) return m;
  BinaryMask out = m;
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      // Boundary band: pixels whose 8-neighborhood mixes fg and bg.
      bool has_fg = false, has_bg = false;
      for (int dy = -1; dy <= 1 && !(has_fg && has_bg); ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || nx >= m.width || ny < 0 || ny >= m.height) continue;
          (m.at(nx, ny) ? has_fg : has_bg) = true;
        }
      if (has_fg && has_bg && rng.uniform01() < rate)
        out.set(x, y, m.at(x, y) ? 0 : 1);
    }
  }
  return out;
}

}  // namespace

const std::vector<SegmenterProfile>& default_profiles() {
  static const std::vector<SegmenterProfile> profiles = {
      {"good", 2.0, 8.0}, {"medium", 4.0, 4.0}, {"poor", 8.0, 4.0}};
  return profiles;
}

const SegmenterProfile& find_profile(
    const std::vector<SegmenterProfile>& profiles, const std::string& id) {
  for (const auto& p : profiles)
    if (p.id == id) return p;
  throw InvalidInputError("unknown segmenter profile '" + id + "'");
}

BinaryMask gen_shape(Rng& rng, int w, int h) {
  if (w < 32 || h < 32)
    throw InvalidInputError("gen_shape: dimensions must be >= 32");
  const double wh = double(w) * h;
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double cx = rng.uniform(0.30 * w, 0.70 * w);
    const double cy = rng.uniform(0.30 * h, 0.70 * h);
    const double base_r = rng.uniform(0.13, 0.31) * std::min(w, h);
    const double aspect = rng.uniform(0.6, 1.6);
    const double rx = base_r * std::sqrt(aspect);
    const double ry = base_r / std::sqrt(aspect);
    const double rot = rng.uniform(0.0, kPi);
    double amp[3], phase[3];
    for (int k = 0; k < 3; ++k) {
      amp[k] = rng.uniform(-0.11, 0.11);
      phase[k] = rng.uniform(0.0, 2.0 * kPi);
    }
    const double cr = std::cos(rot), sr = std::sin(rot);
    BinaryMask raw(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const double ux = (x + 0.5) - cx;
        const double uy = (y + 0.5) - cy;
        const double ex = (ux * cr + uy * sr) / rx;
        const double ey = (-ux * sr + uy * cr) / ry;
        const double rho = std::sqrt(ex * ex + ey * ey);
        const double theta = std::atan2(ey, ex);
        double limit = 1.0;
        for (int k = 0; k < 3; ++k)
          limit += amp[k] * std::cos(double(k + 1) * theta + phase[k]);
        if (rho <= limit) raw.set(x, y, 1);
      }
    }
    BinaryMask blob;
    const std::size_t area = largest_component(raw, &blob);
    const double frac = double(area) / wh;
    if (frac >= 0.02 && frac <= 0.40) return blob;
  }
  throw InvalidInputError("gen_shape: failed to produce a blob in area range");
}

BinaryMask perturb(const BinaryMask& mask, Rng& rng, double severity) {
  if (mask.empty_foreground())
    throw InvalidInputError("perturb: mask must be nonempty");
  if (severity < 0.0 || severity > 1.0)
    throw InvalidInputError("perturb: severity must be in [0,1]");
  if (severity == 0.0) return mask;

  const double area = double(mask.foreground_count());
  const double r_eq = std::sqrt(area / kPi);
  const auto [cx, cy] = centroid(mask);

  // Morphology, then translation, then boundary flips.
  const double morph_mag = severity * kMaxMorphFactor * rng.uniform(0.4, 1.0);
  const int morph_r = int(std::lround(morph_mag * r_eq));
  const bool dilate = rng.uniform01() < 0.5;
  BinaryMask out = morph_disk(mask, morph_r, dilate);

  const double shift_max = severity * kMaxShiftFactor * r_eq;
  const double shift_mag = rng.uniform(0.5 * shift_max, shift_max);
  const double shift_dir = rng.uniform(0.0, 2.0 * kPi);
  const int dx = int(std::lround(shift_mag * std::cos(shift_dir)));
  const int dy = int(std::lround(shift_mag * std::sin(shift_dir)));
  out = translate(out, dx, dy);

  out = flip_boundary(out, rng, severity * kMaxFlipRate);

  if (out.empty_foreground()) {
    const int px = std::clamp(int(std::lround(cx)), 0, mask.width - 1);
    const int py = std::clamp(int(std::lround(cy)), 0, mask.height - 1);
    out.set(px, py, 1);
  }
  return out;
}

BinaryMask mock_segment(const SegmenterProfile& profile, const BinaryMask& gt,
                        Rng& rng) {
  const double severity = rng.beta(profile.alpha, profile.beta);
  return perturb(gt, rng, severity);
}

Image render_image(const BinaryMask& fg_union, Rng& rng) {
  const int w = fg_union.width;
  const int h = fg_union.height;
  Image img(w, h, 1);
  const double angle = rng.uniform(0.0, 2.0 * kPi);
  const double amp = rng.uniform(0.05, 0.15);
  const double gx = std::cos(angle), gy = std::sin(angle);
  // Project corners to normalize the ramp to [-amp, amp].
  double lo = 1e300, hi = -1e300;
  for (const int px : {0, w - 1})
    for (const int py : {0, h - 1}) {
      const double v = gx * px + gy * py;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double base = fg_union.at(x, y) ? 0.65 : 0.35;
      const double ramp = amp * (2.0 * (gx * x + gy * y - lo) / (hi - lo) - 1.0);
      const double noisy = base + ramp + rng.normal(0.0, 0.08);
      const double clamped = std::clamp(noisy, 0.0, 1.0);
      // Snap to the 8-bit grid so the PGM on disk is exactly this image.
      img.set(0, x, y, float(std::lround(clamped * 255.0)) / 255.0f);
    }
  }
  return img;
}

BoxPrompt tight_box(const BinaryMask& mask) {
  if (mask.empty_foreground())
    throw InvalidInputError("tight_box: mask has no foreground");
  int x0 = mask.width, y0 = mask.height, x1 = -1, y1 = -1;
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x)
      if (mask.at(x, y)) {
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
      }
  return BoxPrompt{x0, y0, x1 + 1, y1 + 1};
}

BoxPrompt jittered_box(const BinaryMask& mask, Rng& rng, double jitter_frac) {
  const BoxPrompt tight = tight_box(mask);
  if (jitter_frac <= 0.0) return tight;
  const int jx = int(std::lround(jitter_frac * tight.width()));
  const int jy = int(std::lround(jitter_frac * tight.height()));
  BoxPrompt out = tight;
  out.x0 = std::clamp(tight.x0 + rng.uniform_int(-jx, jx), 0, mask.width - 1);
  out.x1 = std::clamp(tight.x1 + rng.uniform_int(-jx, jx), 1, mask.width);
  out.y0 = std::clamp(tight.y0 + rng.uniform_int(-jy, jy), 0, mask.height - 1);
  out.y1 = std::clamp(tight.y1 + rng.uniform_int(-jy, jy), 1, mask.height);
  if (out.x0 >= out.x1 || out.y0 >= out.y1) return tight;
  return out;
}

std::pair<double, double> quality_scores(const BinaryMask& pred,
                                         const BinaryMask& gt,
                                         const BoxPrompt& prompt) {
  const double q_dice = dice(pred, gt);
  const double diagonal = std::hypot(double(prompt.width()), double(prompt.height()));
  double q_hd = 0.0;
  const bool p_empty = pred.empty_foreground();
  const bool g_empty = gt.empty_foreground();
  if (!p_empty && !g_empty) {
    q_hd = normalized_hd(hausdorff(pred, gt), diagonal);
  } else if (p_empty != g_empty) {
    q_hd = 1.0;  // worst case: one side has no foreground at all
  }
  return {q_dice, q_hd};
}

TrainingTuple build_tuple(Image image, BinaryMask gt, BinaryMask pred,
                          BoxPrompt prompt, std::string sample_id,
                          std::string object_id, std::string segmenter_id) {
  if (image.width != gt.width || image.height != gt.height ||
      !gt.same_shape(pred))
    throw InvalidInputError("build_tuple: image/mask dimension mismatch");
  prompt.validate_within(image.width, image.height);
  TrainingTuple t;
  std::tie(t.q_dice, t.q_hd) = quality_scores(pred, gt, prompt);
  t.image = std::move(image);
  t.gt_mask = std::move(gt);
  t.pred_mask = std::move(pred);
  t.prompt = prompt;
  t.sample_id = std::move(sample_id);
  t.object_id = std::move(object_id);
  t.segmenter_id = std::move(segmenter_id);
  return t;
}

namespace {

std::string sample_name(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "img_%05d", i);
  return buf;
}

void write_manifest(const DatasetManifest& m, const std::filesystem::path& path) {
  ordered_json j;
  j["version"] = m.version;
  j["n"] = m.n;
  j["k"] = m.k;
  j["M"] = m.M;
  j["seed"] = m.seed;
  j["segmenters"] = m.segmenter_ids;
  j["entries"] = ordered_json::array();
  for (const auto& e : m.entries) {
    ordered_json je;
    je["sample_id"] = e.sample_id;
    je["object_id"] = e.object_id;
    je["segmenter_id"] = e.segmenter_id;
    je["image"] = e.image_rel;
    je["gt"] = e.gt_rel;
    je["pred"] = e.pred_rel;
    je["box"] = {e.box.x0, e.box.y0, e.box.x1, e.box.y1};
    j["entries"].push_back(std::move(je));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

Dataset gen_dataset(const GenConfig& config) {
  if (config.n_images < 1 || config.objects_per_image < 1 ||
      config.profiles.empty())
    throw InvalidInputError("gen_dataset: invalid config");
  if (config.out_dir.empty())
    throw InvalidInputError("gen_dataset: output directory not set");

  namespace fs = std::filesystem;
  std::error_code ec;
  for (const char* sub : {"", "images", "gt", "pred"}) {
    fs::create_directories(config.out_dir / sub, ec);
    if (ec) throw IoError("cannot create " + (config.out_dir / sub).string());
  }

  Dataset ds;
  ds.manifest.n = config.n_images;
  ds.manifest.k = config.objects_per_image;
  ds.manifest.M = int(config.profiles.size());
  ds.manifest.seed = config.seed;
  for (const auto& p : config.profiles) ds.manifest.segmenter_ids.push_back(p.id);

  for (int i = 0; i < config.n_images; ++i) {
    const std::string sid = sample_name(i);
    std::vector<BinaryMask> gts;
    BinaryMask fg_union(config.image_width, config.image_height);
    for (int j = 0; j < config.objects_per_image; ++j) {
      Rng shape_rng(derive_seed(config.seed, i, j, kSeedSlotShape));
      gts.push_back(gen_shape(shape_rng, config.image_width, config.image_height));
      for (std::size_t p = 0; p < fg_union.values.size(); ++p)
        fg_union.values[p] |= gts.back().values[p];
    }
    Rng image_rng(derive_seed(config.seed, i, 0, kSeedSlotImage));
    const Image image = render_image(fg_union, image_rng);
    const std::string image_rel = "images/" + sid + ".pgm";
    write_image_pnm(image, config.out_dir / image_rel);

    for (int j = 0; j < config.objects_per_image; ++j) {
      const std::string oid = std::to_string(j);
      Rng prompt_rng(derive_seed(config.seed, i, j, kSeedSlotPrompt));
      const BoxPrompt box = jittered_box(gts[j], prompt_rng, config.prompt_jitter);
      const std::string gt_rel = "gt/" + sid + "_" + oid + ".pgm";
      write_mask_pgm(gts[j], config.out_dir / gt_rel);

      for (std::size_t m = 0; m < config.profiles.size(); ++m) {
        const auto& profile = config.profiles[m];
        Rng tuple_rng(derive_seed(config.seed, i, j, m));
        BinaryMask pred = mock_segment(profile, gts[j], tuple_rng);
        const std::string pred_rel = "pred/" + sid + "_" + oid + "_" + profile.id + ".pgm";
        write_mask_pgm(pred, config.out_dir / pred_rel);

        ds.manifest.entries.push_back(
            {sid, oid, profile.id, image_rel, gt_rel, pred_rel, box});
        ds.tuples.push_back(build_tuple(image, gts[j], std::move(pred), box,
                                        sid, oid, profile.id));
      }
    }
  }
  write_manifest(ds.manifest, config.out_dir / "manifest.json");
  return ds;
}

Dataset load_dataset(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "manifest.json";
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw IoError("cannot open " + manifest_path.string());
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed manifest " + manifest_path.string() + ": " + e.what());
  }

  Dataset ds;
  try {
    ds.manifest.version = j.at("version").get<int>();
    ds.manifest.n = j.at("n").get<int>();
    ds.manifest.k = j.at("k").get<int>();
    ds.manifest.M = j.at("M").get<int>();
    ds.manifest.seed = j.at("seed").get<std::uint64_t>();
    ds.manifest.segmenter_ids = j.at("segmenters").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest " + manifest_path.string() +
                     " missing required field: " + e.what());
  }
  if (ds.manifest.version != 1)
    throw ParseError("manifest " + manifest_path.string() +
                     " has unsupported version " + std::to_string(ds.manifest.version));

  if (!j.contains("entries") || !j["entries"].is_array())
    throw ParseError("manifest " + manifest_path.string() + " missing entries[]");
  for (const auto& je : j["entries"]) {
    ManifestEntry e;
    const std::string id_hint = je.value("sample_id", std::string("<unknown>"));
    try {
      e.sample_id = je.at("sample_id").get<std::string>();
      e.object_id = je.at("object_id").get<std::string>();
      e.segmenter_id = je.at("segmenter_id").get<std::string>();
      e.image_rel = je.at("image").get<std::string>();
      e.gt_rel = je.at("gt").get<std::string>();
      e.pred_rel = je.at("pred").get<std::string>();
      const auto box = je.at("box").get<std::vector<int>>();
      if (box.size() != 4) throw ParseError("box must have 4 integers");
      e.box = BoxPrompt{box[0], box[1], box[2], box[3]};
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError("manifest entry for '" + id_hint +
                       "' missing required field: " + ex.what());
    }
    ds.manifest.entries.push_back(std::move(e));
  }

  // Images are shared between segmenter rows; cache by relative path.
  std::string cached_rel;
  Image cached_image;
  for (const auto& e : ds.manifest.entries) {
    if (e.image_rel != cached_rel) {
      cached_image = read_image_pnm(dir / e.image_rel);
      cached_rel = e.image_rel;
    }
    BinaryMask gt = read_mask_pgm(dir / e.gt_rel);
    BinaryMask pred = read_mask_pgm(dir / e.pred_rel);
    if (gt.width != cached_image.width || gt.height != cached_image.height ||
        !gt.same_shape(pred))
      throw ParseError("dataset entry '" + e.sample_id + "/" + e.object_id +
                       "/" + e.segmenter_id + "': mask/image dimension mismatch");
    try {
      e.box.validate_within(cached_image.width, cached_image.height);
    } catch (const InvalidInputError&) {
      throw ParseError("dataset entry '" + e.sample_id + "': prompt box out of bounds");
    }
    ds.tuples.push_back(build_tuple(cached_image, std::move(gt), std::move(pred),
                                    e.box, e.sample_id, e.object_id,
                                    e.segmenter_id));
  }
  return ds;
}

SplitIndices split_by_image(const Dataset& ds, double val_fraction,
                            std::uint64_t split_seed) {
  if (val_fraction < 0.0 || val_fraction >= 1.0)
    throw InvalidInputError("split_by_image: val fraction must be in [0,1)");
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const auto& t : ds.tuples)
    if (seen.insert(t.sample_id).second) ids.push_back(t.sample_id);

  Rng rng(splitmix64(split_seed ^ 0x5eedULL));
  for (std::size_t i = ids.size(); i > 1; --i)
    std::swap(ids[i - 1], ids[std::size_t(rng.below(i))]);

  const std::size_t n_val = std::size_t(std::floor(val_fraction * double(ids.size())));
  std::set<std::string> val_ids(ids.begin(), ids.begin() + n_val);

  SplitIndices split;
  for (std::size_t idx = 0; idx < ds.tuples.size(); ++idx) {
    if (val_ids.count(ds.tuples[idx].sample_id))
      split.val.push_back(idx);
    else
      split.train.push_back(idx);
  }
  return split;
}

}  // namespace segqual
