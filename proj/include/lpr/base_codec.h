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
#include "lpr/image.h"

namespace lpr {

// Identifiers for the lossy base layer stored in the container.  Values of
// 128 and above are reserved for user-defined codecs.
enum class BaseCodecId : uint8_t {
  kNull = 0,        // empty payload; the base reconstruction is all zeros
  kDownsample = 1,  // box-filtered subsampling, bilinear on decode
};

struct BaseCodecConfig {
  BaseCodecId id = BaseCodecId::kNull;
  int factor = 4;  // subsampling factor; 2, 4, or 8

  void validate() const;
};

struct BaseEncodeResult {
  std::vector<uint8_t> payload;
  ImagePlane lossy;  // reconstruction the residual layer is built against
};

// Produces the base payload and the lossy reconstruction that both sides
// of the codec agree on (the encoder derives it by decoding its own
// payload, so the two can never diverge).
BaseEncodeResult base_encode(const ImagePlane& image,
                             const BaseCodecConfig& config);

// Rebuilds the lossy reconstruction for a stored payload.
ImagePlane base_decode(std::span<const uint8_t> payload,
                       const BaseCodecConfig& config, uint32_t height,
                       uint32_t width, uint32_t channels);

// Subsampled plane dimensions used by the downsampling codec.
inline uint32_t subsampled_extent(uint32_t extent, int factor) {
  return (extent + uint32_t(factor) - 1) / uint32_t(factor);
}

}  // namespace lpr
