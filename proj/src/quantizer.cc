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

#include "lpr/quantizer.h"

#include <algorithm>
#include <cstdlib>

namespace lpr {

int quantize_residual(int r, Tau tau) {
  const int bin = tau.bin_size();
  const int sign = r < 0 ? -1 : 1;
  return sign * bin * ((std::abs(r) + tau.value) / bin);
}

int bin_of(int v, Tau tau) {
  const int bin = tau.bin_size();
  // floor((v + tau) / bin) without relying on negative division rounding
  const int shifted = v + tau.value;
  const int q = shifted >= 0 ? shifted / bin : -((-shifted + bin - 1) / bin);
  return bin * q;
}

ResidualGrid quantize_grid(const ResidualGrid& r, Tau tau) {
  ResidualGrid out(r.height, r.width, r.channels);
  if (tau.lossless()) {
    out.samples = r.samples;
    return out;
  }
  for (size_t i = 0; i < r.samples.size(); ++i)
    out.samples[i] = int16_t(quantize_residual(r.samples[i], tau));
  return out;
}

SymbolSupport quantized_support(SymbolSupport raw, Tau tau) {
  if (raw.stride != 1) fail(ErrorCode::kBadConfig, "expected stride-1 support");
  if (tau.lossless()) return raw;
  return SymbolSupport(bin_of(raw.lo, tau), bin_of(raw.hi, tau),
                       tau.bin_size());
}

void quantize_pmf_into(std::span<const double> pmf, SymbolSupport support,
                       Tau tau, std::span<double> out) {
  if (pmf.empty() || support.count() != int(pmf.size()))
    fail(ErrorCode::kBadConfig, "pmf does not match its support");
  const SymbolSupport qs = quantized_support(support, tau);
  if (int(out.size()) != qs.count())
    fail(ErrorCode::kBadConfig, "output size does not match bin count");
  if (tau.lossless()) {
    std::copy(pmf.begin(), pmf.end(), out.begin());
    return;
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (int i = 0; i < int(pmf.size()); ++i) {
    const int v = support.value_at(i);
    out[qs.index_of(bin_of(v, tau))] += pmf[i];
  }
}

std::pair<SymbolSupport, std::vector<double>> quantize_pmf(
    std::span<const double> pmf, SymbolSupport support, Tau tau) {
  const SymbolSupport qs = quantized_support(support, tau);
  std::vector<double> out(qs.count());
  quantize_pmf_into(pmf, support, tau, out);
  return {qs, std::move(out)};
}

}  // namespace lpr
