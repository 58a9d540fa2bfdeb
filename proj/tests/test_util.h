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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lpr/image.h"

namespace lpr::test {

inline ImagePlane make_constant_image(uint32_t h, uint32_t w, uint32_t c,
                                      uint8_t value) {
  return ImagePlane(h, w, c, value);
}

inline ImagePlane make_noise_image(uint32_t h, uint32_t w, uint32_t c,
                                   uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(0, 255);
  ImagePlane img(h, w, c);
  for (uint8_t& s : img.samples) s = uint8_t(dist(rng));
  return img;
}

inline ImagePlane make_gradient_image(uint32_t h, uint32_t w, uint32_t c,
                                      uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> slope(-3.0, 3.0);
  std::uniform_int_distribution<int> offset(0, 255);
  ImagePlane img(h, w, c);
  for (uint32_t ch = 0; ch < c; ++ch) {
    const double gy = slope(rng), gx = slope(rng);
    const int base = offset(rng);
    for (uint32_t y = 0; y < h; ++y)
      for (uint32_t x = 0; x < w; ++x) {
        const int v = int(std::lround(base + gy * y + gx * x));
        img.at(y, x, ch) = uint8_t(std::clamp(v, 0, 255));
      }
  }
  return img;
}

// Smooth multi-octave value noise plus mild sensor-like noise: enough
// large-scale structure for prediction to work and enough texture that
// rate actually responds to the error bound, which is what the
// natural-image tests care about.
inline ImagePlane make_natural_image(uint32_t h, uint32_t w, uint32_t c,
                                     uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<double> luma(size_t(h) * w, 0.0);
  double amplitude = 64.0;
  for (int scale : {32, 16, 8, 4}) {
    const uint32_t gh = h / uint32_t(scale) + 2;
    const uint32_t gw = w / uint32_t(scale) + 2;
    std::vector<double> lattice(size_t(gh) * gw);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (double& v : lattice) v = unit(rng);
    for (uint32_t y = 0; y < h; ++y) {
      const double fy = double(y) / scale;
      const uint32_t y0 = uint32_t(fy);
      const double wy = fy - y0;
      for (uint32_t x = 0; x < w; ++x) {
        const double fx = double(x) / scale;
        const uint32_t x0 = uint32_t(fx);
        const double wx = fx - x0;
        const auto at = [&](uint32_t yy, uint32_t xx) {
          return lattice[size_t(yy) * gw + xx];
        };
        const double v = at(y0, x0) * (1 - wy) * (1 - wx) +
                         at(y0, x0 + 1) * (1 - wy) * wx +
                         at(y0 + 1, x0) * wy * (1 - wx) +
                         at(y0 + 1, x0 + 1) * wy * wx;
        luma[size_t(y) * w + x] += amplitude * v;
      }
    }
    amplitude *= 0.5;
  }

  ImagePlane img(h, w, c);
  std::normal_distribution<double> grain(0.0, 2.0);
  std::uniform_real_distribution<double> tint_dist(-20.0, 20.0);
  for (uint32_t ch = 0; ch < c; ++ch) {
    const double tint = c == 3 ? tint_dist(rng) : 0.0;
    for (uint32_t y = 0; y < h; ++y)
      for (uint32_t x = 0; x < w; ++x) {
        const double v = 128.0 + luma[size_t(y) * w + x] + tint + grain(rng);
        img.at(y, x, ch) = uint8_t(std::clamp(int(std::lround(v)), 0, 255));
      }
  }
  return img;
}

inline int max_abs_error(const ImagePlane& a, const ImagePlane& b) {
  int worst = 0;
  for (size_t i = 0; i < a.samples.size(); ++i)
    worst = std::max(worst, std::abs(int(a.samples[i]) - int(b.samples[i])));
  return worst;
}

}  // namespace lpr::test
