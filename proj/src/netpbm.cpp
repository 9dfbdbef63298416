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

#include "segqual/netpbm.hpp"

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

namespace segqual {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in, const std::filesystem::path& path) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(char(c));
    c = in.get();
  }
  if (tok.empty())
    throw ParseError("netpbm: truncated header in " + path.string());
  return tok;
}

int parse_dim(const std::string& tok, const std::filesystem::path& path) {
  try {
    const int v = std::stoi(tok);
    if (v < 1) throw ParseError("netpbm: nonpositive dimension in " + path.string());
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    throw ParseError("netpbm: malformed header field '" + tok + "' in " + path.string());
  }
}

std::vector<std::uint8_t> read_payload(std::istream& in, std::size_t n,
                                       const std::filesystem::path& path) {
  std::vector<std::uint8_t> bytes(n);
  in.read(reinterpret_cast<char*>(bytes.data()), std::streamsize(n));
  if (std::size_t(in.gcount()) != n)
    throw ParseError("netpbm: truncated pixel data in " + path.string());
  return bytes;
}

struct PnmHeader {
  std::string magic;
  int width;
  int height;
};

PnmHeader read_header(std::istream& in, const std::filesystem::path& path) {
  PnmHeader h;
  h.magic = next_token(in, path);
  if (h.magic != "P5" && h.magic != "P6")
    throw ParseError("netpbm: unsupported magic '" + h.magic + "' in " + path.string());
  h.width = parse_dim(next_token(in, path), path);
  h.height = parse_dim(next_token(in, path), path);
  const std::string maxval = next_token(in, path);
  if (maxval != "255")
    throw ParseError("netpbm: expected maxval 255, got '" + maxval + "' in " + path.string());
  return h;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

std::uint8_t quantize(float v) {
  return std::uint8_t(std::lround(std::fmin(std::fmax(v, 0.0f), 1.0f) * 255.0f));
}

}  // namespace

Image read_image_pnm(const std::filesystem::path& path) {
  auto in = open_in(path);
  const PnmHeader h = read_header(in, path);
  const int channels = h.magic == "P6" ? 3 : 1;
  const std::size_t plane = std::size_t(h.width) * h.height;
  const auto bytes = read_payload(in, plane * channels, path);
  Image img(h.width, h.height, channels);
  // P6 interleaves RGB; internal layout is planar.
  for (std::size_t i = 0; i < plane; ++i)
    for (int c = 0; c < channels; ++c)
      img.values[std::size_t(c) * plane + i] = float(bytes[i * channels + c]) / 255.0f;
  return img;
}

void write_image_pnm(const Image& img, const std::filesystem::path& path) {
  auto out = open_out(path);
  const std::size_t plane = std::size_t(img.width) * img.height;
  out << (img.channels == 3 ? "P6" : "P5") << "\n"
      << img.width << " " << img.height << "\n255\n";
  std::vector<std::uint8_t> bytes(plane * img.channels);
  for (std::size_t i = 0; i < plane; ++i)
    for (int c = 0; c < img.channels; ++c)
      bytes[i * img.channels + c] = quantize(img.values[std::size_t(c) * plane + i]);
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

BinaryMask read_mask_pgm(const std::filesystem::path& path) {
  auto in = open_in(path);
  const PnmHeader h = read_header(in, path);
  if (h.magic != "P5")
    throw ParseError("mask must be P5 grayscale: " + path.string());
  const auto bytes = read_payload(in, std::size_t(h.width) * h.height, path);
  BinaryMask mask(h.width, h.height);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (bytes[i] == 0) {
      mask.values[i] = 0;
    } else if (bytes[i] == 255) {
      mask.values[i] = 1;
    } else {
      throw ParseError("mask " + path.string() + " has non-binary value " +
                       std::to_string(int(bytes[i])) + " (expected 0 or 255)");
    }
  }
  return mask;
}

void write_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "P5\n" << mask.width << " " << mask.height << "\n255\n";
  std::vector<std::uint8_t> bytes(mask.values.size());
  for (std::size_t i = 0; i < bytes.size(); ++i)
    bytes[i] = mask.values[i] ? 255 : 0;
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace segqual
