// Copyright 2026 The dronesim Authors
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

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "dronesim/errors.hpp"
#include "dronesim/render.hpp"

namespace dronesim {

/// Binary PGM (P5, maxval 255).
inline std::vector<std::uint8_t> encode_pgm(const Image& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

/// Depth raster: "DPT1", u16 width, u16 height, 8 zero bytes, then row-major
/// little-endian f32 meters.
inline std::vector<std::uint8_t> encode_depth(const Image& img) {
  if (img.depth.size() != img.pixels.size()) throw InvalidArgument("image has no depth raster");
  std::vector<std::uint8_t> out = {'D', 'P', 'T', '1'};
  auto put16 = [&](std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
  };
  put16(static_cast<std::uint16_t>(img.width));
  put16(static_cast<std::uint16_t>(img.height));
  out.resize(16, 0);
  for (float d : img.depth) {
    const auto bits = std::bit_cast<std::uint32_t>(d);
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
  return out;
}

inline Image decode_depth(const std::vector<std::uint8_t>& bytes) {
  using Kind = FormatError::Kind;
  if (bytes.size() < 16 || std::memcmp(bytes.data(), "DPT1", 4) != 0) {
    throw FormatError(Kind::corrupt_header, "not a DPT1 depth file");
  }
  Image img;
  img.width = bytes[4] | (bytes[5] << 8);
  img.height = bytes[6] | (bytes[7] << 8);
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  if (bytes.size() != 16 + 4 * n) throw FormatError(Kind::truncated_body, "depth size mismatch");
  img.depth.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t bits = 0;
    for (int k = 0; k < 4; ++k) bits |= static_cast<std::uint32_t>(bytes[16 + 4 * i + k]) << (8 * k);
    img.depth[i] = std::bit_cast<float>(bits);
  }
  return img;
}

inline void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatError::Kind::io, "cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError(FormatError::Kind::io, "write failed: " + path);
}

}  // namespace dronesim
