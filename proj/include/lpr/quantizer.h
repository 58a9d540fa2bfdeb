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

#include <span>
#include <utility>
#include <vector>

#include "lpr/image.h"
#include "lpr/support.h"

namespace lpr {

// Max absolute reconstruction error per pixel. 0 means lossless.
struct Tau {
  int value = 0;

  Tau() = default;
  explicit Tau(int v) : value(v) {
    if (v < 0 || v > 255) fail(ErrorCode::kBadConfig, "tau must be in [0,255]");
  }

  bool lossless() const { return value == 0; }
  // Bin size of the uniform residual quantizer.
  int bin_size() const { return 2 * value + 1; }
};

// Uniform residual quantizer: maps r to the center of its bin, bins of
// width 2*tau+1 centered on multiples of 2*tau+1. |r - q| <= tau.
int quantize_residual(int r, Tau tau);

// Bin classification via floor division; same map as quantize_residual,
// computed along an independent route.
int bin_of(int v, Tau tau);

// Applies quantize_residual elementwise. tau=0 returns a copy.
ResidualGrid quantize_grid(const ResidualGrid& r, Tau tau);

// Sums stride-1 probabilities into bins of width 2*tau+1. Bins that are
// clipped by the support edges keep their partial (smaller) mass. The
// returned support runs from bin_of(lo) to bin_of(hi) with stride 2*tau+1.
std::pair<SymbolSupport, std::vector<double>> quantize_pmf(
    std::span<const double> pmf, SymbolSupport support, Tau tau);

// In-place form used by the coding loop; `out` must hold the bin count.
void quantize_pmf_into(std::span<const double> pmf, SymbolSupport support,
                       Tau tau, std::span<double> out);

// Quantized support for bins covering [lo, hi] of raw values.
SymbolSupport quantized_support(SymbolSupport raw, Tau tau);

}  // namespace lpr
