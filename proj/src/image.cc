// Copyright (c) the LPR Codec Project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lpr/image.h"

#include <algorithm>
#include <cstdio>
#include <cstring>

namespace lpr {

namespace {

constexpr uint32_t kMaxDimension = 1u << 20;

bool is_pnm_space(uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

// Skips whitespace and '#' comments (comment runs to end of line).
void skip_separators(std::span<const uint8_t> bytes, size_t& pos) {
  while (pos < bytes.size()) {
    if (is_pnm_space(bytes[pos])) {
      ++pos;
    } else if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else {
      return;
    }
  }
}

uint32_t parse_uint(std::span<const uint8_t> bytes, size_t& pos) {
  skip_separators(bytes, pos);
  if (pos >= bytes.size() || bytes[pos] < '0' || bytes[pos] > '9')
    fail(ErrorCode::kMalformedHeader, "expected integer in PNM header");
  uint64_t v = 0;
  while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
    v = v * 10 + (bytes[pos] - '0');
    if (v > 0xFFFFFFFFull)
      fail(ErrorCode::kMalformedHeader, "integer overflow in PNM header");
    ++pos;
  }
  return uint32_t(v);
}

}  // namespace

ImagePlane::ImagePlane(uint32_t h, uint32_t w, uint32_t c, uint8_t fill)
    : height(h), width(w), channels(c),
      samples(size_t(h) * w * c, fill) {}

ResidualGrid::ResidualGrid(uint32_t h, uint32_t w, uint32_t c)
    : height(h), width(w), channels(c), samples(size_t(h) * w * c, 0) {}

ImagePlane load_image(std::span<const uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P')
    fail(ErrorCode::kMalformedHeader, "not a binary PGM/PPM file");
  uint32_t channels;
  if (bytes[1] == '5') {
    channels = 1;
  } else if (bytes[1] == '6') {
    channels = 3;
  } else {
    fail(ErrorCode::kMalformedHeader, "unsupported PNM magic (want P5 or P6)");
  }

  size_t pos = 2;
  const uint32_t width = parse_uint(bytes, pos);
  const uint32_t height = parse_uint(bytes, pos);
  const uint32_t maxval = parse_uint(bytes, pos);
  if (width == 0 || height == 0 || width > kMaxDimension ||
      height > kMaxDimension)
    fail(ErrorCode::kMalformedHeader, "bad PNM dimensions");
  if (maxval != 255)
    fail(ErrorCode::kMaxvalUnsupported, "only maxval 255 is supported");

  // Exactly one whitespace byte separates the header from the payload.
  if (pos >= bytes.size() || !is_pnm_space(bytes[pos]))
    fail(ErrorCode::kMalformedHeader, "missing separator before payload");
  ++pos;

  ImagePlane img(height, width, channels);
  if (bytes.size() - pos < img.sample_count())
    fail(ErrorCode::kTruncated, "PNM payload shorter than header promises");
  std::memcpy(img.samples.data(), bytes.data() + pos, img.sample_count());
  return img;
}

std::vector<uint8_t> save_image(const ImagePlane& img) {
  char header[48];
  const int n = std::snprintf(header, sizeof(header), "%s\n%u %u\n255\n",
                              img.channels == 1 ? "P5" : "P6", img.width,
                              img.height);
  std::vector<uint8_t> out;
  out.reserve(size_t(n) + img.sample_count());
  out.insert(out.end(), header, header + n);
  out.insert(out.end(), img.samples.begin(), img.samples.end());
  return out;
}

ResidualGrid compute_residual(const ImagePlane& x, const ImagePlane& lossy) {
  if (!x.same_shape(lossy))
    fail(ErrorCode::kShapeMismatch, "residual: shapes differ");
  ResidualGrid r(x.height, x.width, x.channels);
  for (size_t i = 0; i < r.samples.size(); ++i)
    r.samples[i] = int16_t(int(x.samples[i]) - int(lossy.samples[i]));
  return r;
}

ImagePlane reconstruct(const ImagePlane& lossy, const ResidualGrid& residual) {
  if (!residual.same_shape(lossy))
    fail(ErrorCode::kShapeMismatch, "reconstruct: shapes differ");
  ImagePlane out(lossy.height, lossy.width, lossy.channels);
  for (size_t i = 0; i < out.samples.size(); ++i) {
    const int v = int(lossy.samples[i]) + residual.samples[i];
    out.samples[i] = uint8_t(std::clamp(v, 0, 255));
  }
  return out;
}

}  // namespace lpr
