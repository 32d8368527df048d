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

#include <algorithm>
#include <array>
#include <cmath>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "dronesim/base64.hpp"
#include "dronesim/drone.hpp"
#include "dronesim/errors.hpp"
#include "dronesim/rng.hpp"

namespace dronesim {

inline constexpr std::uint8_t kNoCommand = 255;

/// One labeled observation: what the camera and sensors showed, the commands
/// executed just before (most recent first) and the command to execute next.
struct Sample {
  std::uint32_t flight_id = 0;
  std::uint8_t label = 0;
  float height_m = 0.0f;
  float tof_m = 0.0f;
  float cmd_count = 0.0f;
  std::vector<std::uint8_t> prev_cmds;  // length prev_k, kNoCommand padded
  std::vector<std::uint8_t> pixels;     // width * height, row-major

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Dataset {
  std::uint16_t width = 160;
  std::uint16_t height = 120;
  std::uint8_t prev_k = 2;
  std::uint32_t flight_count = 0;
  std::vector<Sample> samples;

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

namespace detail {

/// Shifts `code` into a most-recent-first history of fixed length.
inline void push_history(std::vector<std::uint8_t>& prev, std::uint8_t code) {
  if (prev.empty()) return;
  for (std::size_t i = prev.size() - 1; i > 0; --i) prev[i] = prev[i - 1];
  prev[0] = code;
}

}  // namespace detail

/// Number of distinct flight ids among the samples.
inline std::uint32_t count_flights(const std::vector<Sample>& samples) {
  std::set<std::uint32_t> ids;
  for (const auto& s : samples) ids.insert(s.flight_id);
  return static_cast<std::uint32_t>(ids.size());
}

// ---------------------------------------------------------------------------
// TDS1 container. Little-endian throughout.
//
//   header (20 bytes)
//     char[4] magic "TDS1"
//     u16     version (1)
//     u16     image_width
//     u16     image_height
//     u8      prev_k
//     u8      label_count (5)
//     u32     sample_count
//     u32     flight_count
//   sample (17 + prev_k + width*height bytes), repeated
//     u32 flight_id, u8 label, f32 height_m, f32 tof_m, f32 cmd_count,
//     u8[prev_k] prev_cmds, u8[width*height] pixels
// ---------------------------------------------------------------------------

namespace tds1 {

inline constexpr char kMagic[4] = {'T', 'D', 'S', '1'};
inline constexpr std::uint16_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 20;

inline std::size_t record_size(std::size_t prev_k, std::size_t pixels) {
  return 4 + 1 + 3 * 4 + prev_k + pixels;
}

namespace detail {

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void bytes(const std::vector<std::uint8_t>& b) { out_.insert(out_.end(), b.begin(), b.end()); }

 private:
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  Reader(const std::vector<std::uint8_t>& in, std::size_t pos) : in_(in), pos_(pos) {}
  std::uint8_t u8() { return in_[pos_++]; }
  std::uint16_t u16() {
    const std::uint16_t lo = u8();
    return static_cast<std::uint16_t>(lo | (u8() << 8));
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::vector<std::uint8_t> bytes(std::size_t n) {
    std::vector<std::uint8_t> b(in_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                in_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return b;
  }

 private:
  const std::vector<std::uint8_t>& in_;
  std::size_t pos_;
};

}  // namespace detail

inline std::vector<std::uint8_t> encode(const Dataset& ds) {
  const std::size_t px = ds.pixel_count();
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + ds.samples.size() * record_size(ds.prev_k, px));
  detail::Writer w(out);
  for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u16(kVersion);
  w.u16(ds.width);
  w.u16(ds.height);
  w.u8(ds.prev_k);
  w.u8(static_cast<std::uint8_t>(kCommandCount));
  w.u32(static_cast<std::uint32_t>(ds.samples.size()));
  w.u32(ds.flight_count);
  for (const Sample& s : ds.samples) {
    if (s.prev_cmds.size() != ds.prev_k || s.pixels.size() != px) {
      throw InvalidArgument("sample shape does not match the dataset header");
    }
    w.u32(s.flight_id);
    w.u8(s.label);
    w.f32(s.height_m);
    w.f32(s.tof_m);
    w.f32(s.cmd_count);
    w.bytes(s.prev_cmds);
    w.bytes(s.pixels);
  }
  return out;
}

inline Dataset decode(const std::vector<std::uint8_t>& bytes) {
  using Kind = FormatError::Kind;
  if (bytes.size() < kHeaderSize) throw FormatError(Kind::corrupt_header, "file shorter than header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw FormatError(Kind::corrupt_header, "bad magic");

  detail::Reader r(bytes, 4);
  const std::uint16_t version = r.u16();
  if (version != kVersion) {
    throw FormatError(Kind::version_mismatch, "unsupported version " + std::to_string(version));
  }
  Dataset ds;
  ds.width = r.u16();
  ds.height = r.u16();
  ds.prev_k = r.u8();
  const std::uint8_t label_count = r.u8();
  const std::uint32_t sample_count = r.u32();
  ds.flight_count = r.u32();
  if (label_count != kCommandCount) throw FormatError(Kind::corrupt_header, "label count != 5");
  if (ds.width == 0 || ds.height == 0) throw FormatError(Kind::corrupt_header, "empty image size");

  const std::size_t record = record_size(ds.prev_k, ds.pixel_count());
  const std::size_t body = bytes.size() - kHeaderSize;
  const std::size_t expected = static_cast<std::size_t>(sample_count) * record;
  if (body < expected) throw FormatError(Kind::truncated_body, "body shorter than sample_count");
  if (body > expected) throw FormatError(Kind::corrupt_header, "body longer than sample_count");

  ds.samples.reserve(sample_count);
  for (std::uint32_t i = 0; i < sample_count; ++i) {
    Sample s;
    s.flight_id = r.u32();
    s.label = r.u8();
    s.height_m = r.f32();
    s.tof_m = r.f32();
    s.cmd_count = r.f32();
    s.prev_cmds = r.bytes(ds.prev_k);
    s.pixels = r.bytes(ds.pixel_count());
    if (s.label >= kCommandCount) {
      throw FormatError(Kind::corrupt_body, "label out of range in sample " + std::to_string(i));
    }
    ds.samples.push_back(std::move(s));
  }
  if (count_flights(ds.samples) != ds.flight_count) {
    throw FormatError(Kind::corrupt_header, "flight_count disagrees with the samples");
  }
  return ds;
}

}  // namespace tds1

inline void write_dataset(const Dataset& ds, const std::string& path) {
  const auto bytes = tds1::encode(ds);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatError::Kind::io, "cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError(FormatError::Kind::io, "write failed: " + path);
}

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatError::Kind::io, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Dataset read_dataset(const std::string& path) { return tds1::decode(read_file_bytes(path)); }

// ---------------------------------------------------------------------------
// JSONL sidecar: one object per sample, pixels base64-encoded.
// ---------------------------------------------------------------------------

inline nlohmann::json sample_to_json(const Dataset& ds, const Sample& s) {
  return {{"flight_id", s.flight_id},
          {"label", s.label},
          {"label_name", to_string(static_cast<FlightCommand>(s.label))},
          {"height_m", s.height_m},
          {"tof_m", s.tof_m},
          {"cmd_count", s.cmd_count},
          {"prev_cmds", s.prev_cmds},
          {"image", {{"w", ds.width}, {"h", ds.height}, {"pixels_b64", base64::encode(s.pixels)}}}};
}

inline void write_jsonl(const Dataset& ds, std::ostream& out) {
  for (const Sample& s : ds.samples) out << sample_to_json(ds, s).dump() << '\n';
}

inline Sample sample_from_json(const nlohmann::json& j, Dataset& shape) {
  using Kind = FormatError::Kind;
  try {
    Sample s;
    s.flight_id = j.at("flight_id").get<std::uint32_t>();
    s.label = j.at("label").get<std::uint8_t>();
    s.height_m = j.at("height_m").get<float>();
    s.tof_m = j.at("tof_m").get<float>();
    s.cmd_count = j.at("cmd_count").get<float>();
    s.prev_cmds = j.at("prev_cmds").get<std::vector<std::uint8_t>>();
    const auto& img = j.at("image");
    shape.width = img.at("w").get<std::uint16_t>();
    shape.height = img.at("h").get<std::uint16_t>();
    shape.prev_k = static_cast<std::uint8_t>(s.prev_cmds.size());
    auto pixels = base64::decode(img.at("pixels_b64").get<std::string>());
    if (!pixels || pixels->size() != shape.pixel_count()) {
      throw FormatError(Kind::corrupt_body, "bad pixel payload");
    }
    s.pixels = std::move(*pixels);
    if (s.label >= kCommandCount) throw FormatError(Kind::corrupt_body, "label out of range");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(Kind::corrupt_body, e.what());
  }
}

/// Reads a JSONL export back. Every line must agree on image size and prev_k.
inline Dataset read_jsonl(std::istream& in) {
  Dataset ds;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(FormatError::Kind::corrupt_body, e.what());
    }
    Dataset shape;
    Sample s = sample_from_json(j, shape);
    if (first) {
      ds.width = shape.width;
      ds.height = shape.height;
      ds.prev_k = shape.prev_k;
      first = false;
    } else if (shape.width != ds.width || shape.height != ds.height || shape.prev_k != ds.prev_k) {
      throw FormatError(FormatError::Kind::corrupt_body, "inconsistent sample shape");
    }
    ds.samples.push_back(std::move(s));
  }
  ds.flight_count = count_flights(ds.samples);
  return ds;
}

// ---------------------------------------------------------------------------
// Statistics and splitting
// ---------------------------------------------------------------------------

struct LabelHistogram {
  std::array<std::uint64_t, kCommandCount> counts{};
  std::uint32_t flights = 0;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
  double share(std::size_t label) const {
    const auto t = total();
    return t == 0 ? 0.0 : static_cast<double>(counts[label]) / static_cast<double>(t);
  }
};

inline LabelHistogram label_histogram(const Dataset& ds) {
  LabelHistogram h;
  for (const Sample& s : ds.samples) ++h.counts.at(s.label);
  h.flights = count_flights(ds.samples);
  return h;
}

/// Splits by flight: flights are shuffled with `seed`, then each goes to the
/// partition with the largest sample deficit against its target (ties to the
/// lower index). Sample order within a partition follows the input order.
inline std::vector<Dataset> split_dataset(const Dataset& ds, const std::vector<double>& fractions,
                                          std::uint64_t seed) {
  double sum = 0.0;
  for (double f : fractions) {
    if (!(f >= 0.0)) throw InvalidArgument("split fractions must be nonnegative");
    sum += f;
  }
  if (fractions.empty() || std::abs(sum - 1.0) > 1e-9) {
    throw InvalidArgument("split fractions must sum to 1");
  }

  std::vector<std::uint32_t> flights;
  std::map<std::uint32_t, std::size_t> flight_size;
  for (const Sample& s : ds.samples) {
    if (flight_size[s.flight_id]++ == 0) flights.push_back(s.flight_id);
  }
  Rng rng(seed);
  for (std::size_t i = flights.size(); i > 1; --i) {
    std::swap(flights[i - 1], flights[static_cast<std::size_t>(rng.uniform_int(0, i - 1))]);
  }

  const double total = static_cast<double>(ds.samples.size());
  std::vector<double> assigned(fractions.size(), 0.0);
  std::map<std::uint32_t, std::size_t> partition_of;
  for (std::uint32_t id : flights) {
    std::size_t best = 0;
    double best_deficit = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < fractions.size(); ++p) {
      const double deficit = fractions[p] * total - assigned[p];
      if (deficit > best_deficit) {
        best = p;
        best_deficit = deficit;
      }
    }
    partition_of[id] = best;
    assigned[best] += static_cast<double>(flight_size[id]);
  }

  std::vector<Dataset> parts(fractions.size());
  for (Dataset& p : parts) {
    p.width = ds.width;
    p.height = ds.height;
    p.prev_k = ds.prev_k;
  }
  for (const Sample& s : ds.samples) parts[partition_of[s.flight_id]].samples.push_back(s);
  for (Dataset& p : parts) p.flight_count = count_flights(p.samples);
  return parts;
}

}  // namespace dronesim
