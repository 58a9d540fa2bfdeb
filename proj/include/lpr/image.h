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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpr/error.h"

namespace lpr {

// 8-bit image, row-major and channel-interleaved. channels is 1 (gray)
// or 3 (RGB). This is the single in-memory layout used everywhere.
struct ImagePlane {
  uint32_t height = 0;
  uint32_t width = 0;
  uint32_t channels = 0;
  std::vector<uint8_t> samples;

  ImagePlane() = default;
  ImagePlane(uint32_t h, uint32_t w, uint32_t c, uint8_t fill = 0);

  size_t pixel_count() const { return size_t(height) * width; }
  size_t sample_count() const { return pixel_count() * channels; }

  size_t index(uint32_t row, uint32_t col, uint32_t ch) const {
    return (size_t(row) * width + col) * channels + ch;
  }
  uint8_t at(uint32_t row, uint32_t col, uint32_t ch) const {
    return samples[index(row, col, ch)];
  }
  uint8_t& at(uint32_t row, uint32_t col, uint32_t ch) {
    return samples[index(row, col, ch)];
  }

  bool same_shape(const ImagePlane& o) const {
    return height == o.height && width == o.width && channels == o.channels;
  }
  bool operator==(const ImagePlane&) const = default;
};

// Signed residuals with the same shape and layout as their image.
// Raw residuals are in [-255, 255]; tau-quantized grids can reach
// +-(255 + tau), which still fits comfortably in int16_t.
struct ResidualGrid {
  uint32_t height = 0;
  uint32_t width = 0;
  uint32_t channels = 0;
  std::vector<int16_t> samples;

  ResidualGrid() = default;
  ResidualGrid(uint32_t h, uint32_t w, uint32_t c);

  size_t sample_count() const { return size_t(height) * width * channels; }
  size_t index(uint32_t row, uint32_t col, uint32_t ch) const {
    return (size_t(row) * width + col) * channels + ch;
  }
  int16_t at(uint32_t row, uint32_t col, uint32_t ch) const {
    return samples[index(row, col, ch)];
  }
  int16_t& at(uint32_t row, uint32_t col, uint32_t ch) {
    return samples[index(row, col, ch)];
  }

  bool same_shape(const ImagePlane& o) const {
    return height == o.height && width == o.width && channels == o.channels;
  }
  bool operator==(const ResidualGrid&) const = default;
};

// Binary PGM (P5) / PPM (P6) with maxval 255. Header comments are
// accepted on load and never written back.
ImagePlane load_image(std::span<const uint8_t> bytes);
std::vector<uint8_t> save_image(const ImagePlane& img);

// r = x - lossy, elementwise.
ResidualGrid compute_residual(const ImagePlane& x, const ImagePlane& lossy);

// x_hat = clamp(lossy + residual, 0, 255). Clamping never increases the
// per-pixel error against any original value in [0, 255].
ImagePlane reconstruct(const ImagePlane& lossy, const ResidualGrid& residual);

}  // namespace lpr
