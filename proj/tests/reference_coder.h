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

#include <utility>
#include <vector>

#include "lpr/residual_coder.h"

namespace lpr::test {

// Straight-line reference encoder for the estimator path: parameters are
// computed pixel by pixel in plain raster order, with no wavefront
// schedule and no table memoization, rebuilding every frequency table from
// scratch.  The production encoder must produce byte-identical segments,
// since scheduling and caching are only supposed to reorganize the same
// computation.
inline std::vector<std::vector<uint8_t>> reference_encode_raster(
    const ResidualGrid& coded, const ResidualCodingConfig& cfg) {
  const std::vector<PatchRect> rects =
      tile(coded.height, coded.width, cfg.patch_size);
  const std::vector<std::pair<int, int>> offsets =
      context_offsets(cfg.context);
  const SymbolSupport qs = quantized_support(cfg.support, cfg.tau);

  std::vector<std::vector<uint8_t>> segments;
  segments.reserve(rects.size());
  std::vector<double> pmf(size_t(cfg.support.count()));
  std::vector<double> qpmf(size_t(qs.count()));
  std::vector<int> ctx(offsets.size());

  for (const PatchRect& rect : rects) {
    RangeEncoder enc;
    for (uint32_t r = 0; r < rect.rows; ++r)
      for (uint32_t c = 0; c < rect.cols; ++c)
        for (uint32_t ch = 0; ch < coded.channels; ++ch) {
          int n = 0;
          for (const auto& [dr, dc] : offsets) {
            const int rr = int(r) + dr;
            const int cc = int(c) + dc;
            if (rr < 0 || cc < 0 || rr >= int(rect.rows) ||
                cc >= int(rect.cols))
              continue;
            ctx[size_t(n++)] =
                coded.at(rect.row0 + uint32_t(rr), rect.col0 + uint32_t(cc), ch);
          }
          const MixtureParams m =
              estimate_params(std::span<const int>(ctx.data(), size_t(n)));
          discrete_pmf(m, cfg.support, pmf);
          quantize_pmf_into(pmf, cfg.support, cfg.tau, qpmf);
          const QuantizedCdf cdf = build_cdf(qpmf, qs);
          const int value = coded.at(rect.row0 + r, rect.col0 + c, ch);
          enc.encode_symbol(cdf, qs.index_of(value));
        }
    enc.flush();
    segments.push_back(enc.take());
  }
  return segments;
}

}  // namespace lpr::test
