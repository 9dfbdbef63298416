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

#include <doctest.h>

#include "segqual/preprocess.hpp"
#include "test_util.hpp"

using namespace segqual;
using namespace segqual::test;

namespace {

Image random_image(Rng& rng, int w, int h, int c) {
  Image img(w, h, c);
  for (auto& v : img.values) v = float(rng.uniform01());
  return img;
}

Image hflip(const Image& img) {
  Image out(img.width, img.height, img.channels);
  for (int c = 0; c < img.channels; ++c)
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x)
        out.set(c, x, y, img.at(c, img.width - 1 - x, y));
  return out;
}

BinaryMask hflip(const BinaryMask& m) {
  BinaryMask out(m.width, m.height);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x)
      out.set(x, y, m.at(m.width - 1 - x, y));
  return out;
}

BoxPrompt hflip(const BoxPrompt& b, int img_w) {
  return {img_w - b.x1, b.y0, img_w - b.x0, b.y1};
}

}  // namespace

TEST_CASE("expand_channels replicates grayscale and passes color through") {
  const Image gray = constant_image(4, 3, 1, 0.3f);
  const Image rgb = expand_channels(gray);
  CHECK(rgb.channels == 3);
  CHECK(rgb.width == 4);
  CHECK(rgb.height == 3);
  for (const float v : rgb.values) CHECK(v == 0.3f);

  Rng rng(21);
  const Image color = random_image(rng, 5, 4, 3);
  CHECK(expand_channels(color) == color);
}

TEST_CASE("blend mixes the mask into the red channel only") {
  Image img = constant_image(2, 1, 3, 0.4f);
  img.set(1, 0, 0, 0.8f);
  img.set(2, 0, 0, 0.9f);
  BinaryMask mask(2, 1);
  mask.set(0, 0, 1);

  const Image out = blend(img, mask);
  CHECK(out.at(0, 0, 0) == 0.7f);   // 0.5*0.4 + 0.5*1
  CHECK(out.at(0, 1, 0) == 0.2f);   // 0.5*0.4 + 0.5*0
  CHECK(out.at(1, 0, 0) == 0.8f);   // green untouched
  CHECK(out.at(2, 0, 0) == 0.9f);   // blue untouched

  Rng rng(22);
  const Image big = random_image(rng, 9, 7, 3);
  const BinaryMask zero(9, 7);
  const Image halved = blend(big, zero);
  for (int y = 0; y < 7; ++y)
    for (int x = 0; x < 9; ++x) {
      CHECK(halved.at(0, x, y) == 0.5f * big.at(0, x, y));
      CHECK(halved.at(1, x, y) == big.at(1, x, y));
      CHECK(halved.at(2, x, y) == big.at(2, x, y));
    }

  CHECK_THROWS_AS(blend(constant_image(2, 2, 1, 0.1f), BinaryMask(2, 2)),
                  InvalidInputError);
  CHECK_THROWS_AS(blend(img, BinaryMask(3, 1)), InvalidInputError);
}

TEST_CASE("blend is invertible on the red channel up to one rounding step") {
  Rng rng(23);
  const Image img = random_image(rng, 12, 12, 3);
  BinaryMask mask = random_mask(rng, 12, 12);
  const Image out = blend(img, mask);
  for (int y = 0; y < 12; ++y)
    for (int x = 0; x < 12; ++x) {
      const float recovered = 2.0f * out.at(0, x, y) - float(mask.at(x, y));
      CHECK(recovered == doctest::Approx(img.at(0, x, y)).epsilon(1e-6));
    }
}

TEST_CASE("crop basics") {
  Rng rng(24);
  const Image img = random_image(rng, 10, 8, 3);

  CHECK(crop(img, BoxPrompt{0, 0, 10, 8}) == img);

  const Image sub = crop(img, BoxPrompt{2, 1, 7, 5});
  CHECK(sub.width == 5);
  CHECK(sub.height == 4);
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 5; ++x)
        CHECK(sub.at(c, x, y) == img.at(c, x + 2, y + 1));

  const Image pixel = crop(img, BoxPrompt{3, 2, 4, 3});
  CHECK(pixel.width == 1);
  CHECK(pixel.height == 1);
  CHECK(pixel.at(0, 0, 0) == img.at(0, 3, 2));

  CHECK_THROWS_AS(crop(img, BoxPrompt{0, 0, 11, 8}), InvalidInputError);
  CHECK_THROWS_AS(crop(img, BoxPrompt{-1, 0, 5, 5}), InvalidInputError);
  CHECK_THROWS_AS(crop(img, BoxPrompt{4, 4, 4, 6}), InvalidInputError);
}

TEST_CASE("resize identity and constant preservation") {
  Rng rng(25);
  const Image img = random_image(rng, 6, 6, 3);
  CHECK(resize(img, 6) == img);

  const Image flat = constant_image(7, 5, 1, 0.42f);
  const Image out = resize(flat, 11);
  CHECK(out.width == 11);
  CHECK(out.height == 11);
  for (const float v : out.values) CHECK(v == doctest::Approx(0.42f).epsilon(1e-7));

  CHECK_THROWS_AS(resize(img, 0), InvalidInputError);
}

TEST_CASE("resize 2x2 checkerboard to 3x3 matches the hand computation") {
  Image board(2, 2, 1);
  board.set(0, 0, 0, 0.0f);
  board.set(0, 1, 0, 1.0f);
  board.set(0, 0, 1, 1.0f);
  board.set(0, 1, 1, 0.0f);
  const Image out = resize(board, 3);
  const float expect[3][3] = {
      {0.0f, 0.5f, 1.0f}, {0.5f, 0.5f, 0.5f}, {1.0f, 0.5f, 0.0f}};
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x)
      CHECK(out.at(0, x, y) == doctest::Approx(expect[y][x]).epsilon(1e-7));
}

TEST_CASE("resize keeps values inside [0,1]") {
  Rng rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = rng.uniform_int(1, 30);
    const int h = rng.uniform_int(1, 30);
    const Image img = random_image(rng, w, h, 3);
    const Image out = resize(img, rng.uniform_int(1, 40));
    for (const float v : out.values) {
      CHECK(v >= 0.0f);
      CHECK(v <= 1.0f);
    }
  }
}

TEST_CASE("psi contract: shape, range, determinism") {
  Rng rng(27);
  const Image img = random_image(rng, 40, 30, 1);
  const BinaryMask mask = random_mask(rng, 40, 30, 0.3);
  const BoxPrompt box{5, 4, 28, 25};

  const ModelInput a = psi(img, mask, box, 17);
  CHECK(a.channels == 3);
  CHECK(a.width == 17);
  CHECK(a.height == 17);
  for (const float v : a.values) {
    CHECK(v >= 0.0f);
    CHECK(v <= 1.0f);
  }
  CHECK(psi(img, mask, box, 17) == a);
}

TEST_CASE("psi of a constant image and empty mask") {
  const float c = 0.6f;
  const Image img = constant_image(20, 20, 1, c);
  const BinaryMask mask(20, 20);
  const ModelInput out = psi(img, mask, BoxPrompt{2, 2, 18, 18}, 8);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) {
      CHECK(out.at(0, x, y) == doctest::Approx(c / 2).epsilon(1e-7));
      CHECK(out.at(1, x, y) == doctest::Approx(c).epsilon(1e-7));
      CHECK(out.at(2, x, y) == doctest::Approx(c).epsilon(1e-7));
    }
}

TEST_CASE("psi commutes with a consistent horizontal flip") {
  Rng rng(28);
  for (int trial = 0; trial < 10; ++trial) {
    const int w = rng.uniform_int(24, 40);
    const int h = rng.uniform_int(24, 40);
    const Image img = random_image(rng, w, h, 1);
    const BinaryMask mask = random_mask(rng, w, h, 0.4);
    const int x0 = rng.uniform_int(0, w / 2);
    const int y0 = rng.uniform_int(0, h / 2);
    const BoxPrompt box{x0, y0, x0 + rng.uniform_int(4, w - x0 - 1) + 1,
                        y0 + rng.uniform_int(4, h - y0 - 1) + 1};

    const ModelInput straight = hflip(psi(img, mask, box, 16));
    const ModelInput flipped = psi(hflip(img), hflip(mask), hflip(box, w), 16);
    REQUIRE(straight.values.size() == flipped.values.size());
    for (std::size_t i = 0; i < straight.values.size(); ++i)
      CHECK(straight.values[i] == doctest::Approx(flipped.values[i]).epsilon(1e-6));
  }
}
