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

#include "lpr/image.h"
#include "lpr/logistic.h"
#include "lpr/quantizer.h"
#include "lpr/range_coder.h"
#include "lpr/wavefront.h"

namespace lpr {

// Where the per-pixel mixture parameters come from.
enum class ParamSource : uint8_t {
  kEstimator = 0,  // causal moment estimator over the context mask
  kTensor = 1,     // dense externally supplied parameter tensor
};

struct ResidualCodingConfig {
  Tau tau{0};
  SymbolSupport support;  // stride-1 support PMFs are evaluated over
  ContextModelSpec context{7, 3};
  uint32_t patch_size = 64;
  ParamSource source = ParamSource::kEstimator;
  const ParamTensor* tensor = nullptr;  // required when source == kTensor
  int threads = 0;                      // 0 = hardware concurrency

  void validate(uint32_t height, uint32_t width, uint32_t channels) const;
  int mixtures() const {
    return source == ParamSource::kTensor && tensor ? tensor->mixtures : 1;
  }
};

// Entropy-codes an already-quantized residual grid.  Patches are coded
// independently (context masks never cross a patch edge) and each returns
// its own byte segment, in raster tile order.  Within a patch the
// estimator's parameters are computed wavefront group by wavefront group
// -- every pixel of a group depends only on earlier groups -- and symbols
// are then emitted in raster order, one per channel per pixel.
//
// The grid passed in must already hold coded values: the layer never sees
// unquantized residuals, so its output can only depend on what the decoder
// will be able to reproduce.
std::vector<std::vector<uint8_t>> encode_residual_layer(
    const ResidualGrid& coded, const ResidualCodingConfig& config);

// Inverse of encode_residual_layer; reproduces the coded grid exactly.
// Parameters are recomputed per pixel in raster order from the residuals
// decoded so far, which is always possible because every context offset
// precedes the pixel in raster order.
ResidualGrid decode_residual_layer(
    std::span<const std::vector<uint8_t>> segments, uint32_t height,
    uint32_t width, uint32_t channels, const ResidualCodingConfig& config);

}  // namespace lpr
