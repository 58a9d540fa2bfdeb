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

#include "lpr/error.h"

namespace lpr {

// Inclusive symbol range with a fixed stride: stride 1 for raw residuals,
// 2*tau+1 for quantized ones (symbols are then bin centers).
struct SymbolSupport {
  int lo = 0;
  int hi = 0;
  int stride = 1;

  SymbolSupport() = default;
  SymbolSupport(int lo_, int hi_, int stride_ = 1)
      : lo(lo_), hi(hi_), stride(stride_) {
    if (stride <= 0 || lo > hi || (hi - lo) % stride != 0)
      fail(ErrorCode::kBadConfig, "invalid symbol support");
  }

  int count() const { return (hi - lo) / stride + 1; }
  bool contains(int v) const {
    return v >= lo && v <= hi && (v - lo) % stride == 0;
  }
  int index_of(int v) const { return (v - lo) / stride; }
  int value_at(int i) const { return lo + i * stride; }

  bool operator==(const SymbolSupport&) const = default;
};

}  // namespace lpr
