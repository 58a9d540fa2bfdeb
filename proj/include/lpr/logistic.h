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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lpr/error.h"
#include "lpr/support.h"

namespace lpr {

// Hard cap on the number of logistic components per mixture.  Keeps
// per-pixel parameter records on the stack.
inline constexpr int kMaxMixtures = 16;

// Lower bound applied to every logistic scale so PMFs never collapse to a
// point mass that the entropy coder cannot represent.
inline constexpr double kSigmaMin = 1e-3;

// Numerically guarded logistic sigmoid 1 / (1 + e^-t).
double sigmoid(double t);

// Mixture of discretized logistics for a single channel of a single pixel.
// Means are final (any cross-channel conditioning already applied).
struct MixtureParams {
  int mixtures = 1;
  std::array<double, kMaxMixtures> weight{};  // nonnegative, sums to 1
  std::array<double, kMaxMixtures> mean{};
  std::array<double, kMaxMixtures> scale{};  // each >= kSigmaMin
};

// Full parameter record for one pixel: shared component weights plus
// per-channel means/scales and the linear coefficients that condition the
// means of channels 1 and 2 on the earlier channels' coded residuals.
struct PixelParams {
  int mixtures = 1;
  int channels = 1;
  std::array<double, kMaxMixtures> weight{};
  std::array<double, 3 * kMaxMixtures> mean{};   // mean[channel * K + k]
  std::array<double, 3 * kMaxMixtures> scale{};  // scale[channel * K + k]
  std::array<double, 3 * kMaxMixtures> beta{};   // beta[t * K + k], 3-channel only

  // Mixture for `channel`, with means shifted by the coded residuals of the
  // preceding channels at the same pixel (`prev[0]` = channel 0, ...).
  MixtureParams channel_mixture(int channel, std::span<const int> prev) const;
};

// Evaluates the discretized mixture over a stride-1 support, writing one
// probability per support value into `out` (size must equal the support
// count).  Mass beyond either end of the support is folded into the
// terminal values, so the result sums to 1.
void discrete_pmf(const MixtureParams& params, SymbolSupport support,
                  std::span<double> out);

// Deterministic single-component fallback fitted from the same-channel
// coded residuals in a pixel's causal context: mean of the samples (0 when
// the context is empty) and scale max(1, 1.5 * mean absolute deviation).
MixtureParams estimate_params(std::span<const int> context);

// Dense per-pixel mixture parameters supplied by an external model.  `raw`
// holds the stored float payload; weights are raw logits and scales are
// pre-softplus, so records are transformed on access.
struct ParamTensor {
  uint32_t height = 0;
  uint32_t width = 0;
  int mixtures = 1;
  int channels = 1;
  std::vector<float> raw;

  ParamTensor() = default;
  ParamTensor(uint32_t h, uint32_t w, int k, int c);

  // Floats stored per pixel: K weight logits, C*K means, C*K raw scales,
  // and 3*K conditioning coefficients when channels == 3.
  size_t pixel_stride() const;
  // Mutable view of one pixel's raw floats, in the order above.
  std::span<float> raw_pixel(uint32_t row, uint32_t col);
  std::span<const float> raw_pixel(uint32_t row, uint32_t col) const;
  // Transformed (softmax / softplus-floored) record for one pixel.
  PixelParams pixel_params(uint32_t row, uint32_t col) const;
};

// Parses a serialized parameter tensor, validating shape, float count, and
// finiteness of every value.
ParamTensor load_param_tensor(std::span<const uint8_t> bytes);

// Serializes a tensor to the byte layout accepted by load_param_tensor.
std::vector<uint8_t> serialize_param_tensor(const ParamTensor& tensor);

}  // namespace lpr
