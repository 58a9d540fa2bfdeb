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
#include <optional>
#include <span>
#include <vector>

#include "lpr/base_codec.h"
#include "lpr/bytes.h"
#include "lpr/image.h"
#include "lpr/residual_coder.h"

namespace lpr {

inline constexpr char kContainerMagic[4] = {'L', 'P', 'R', '1'};
inline constexpr uint8_t kContainerVersion = 1;
// Bytes before the per-patch segment length table.
inline constexpr size_t kFixedHeaderBytes = 31;

// Everything needed to decode a file, in stored field order.
struct ContainerHeader {
  uint32_t height = 0;
  uint32_t width = 0;
  uint8_t channels = 0;
  uint8_t tau = 0;
  BaseCodecConfig base;
  uint16_t patch_size = 64;
  uint8_t kernel = 7;
  uint8_t par_index = 3;
  uint8_t mixtures = 1;
  ParamSource source = ParamSource::kEstimator;
  int16_t r_min = 0;
  int16_t r_max = 0;
  uint32_t base_payload_len = 0;
  std::vector<uint32_t> segment_lengths;  // one per patch, raster order

  size_t patches() const { return segment_lengths.size(); }
};

// Serializes the header fields and the segment length table.
std::vector<uint8_t> serialize_header(const ContainerHeader& header);
// Parses and validates them; the reader is left at the base payload.
ContainerHeader parse_header(ByteReader& reader);

struct EncodeConfig {
  Tau tau{0};
  // Unset picks the default pairing: no base layer for lossless coding,
  // factor-4 downsampling when tau > 0.
  std::optional<BaseCodecConfig> base;
  uint32_t patch_size = 64;
  ContextModelSpec context{7, 3};
  ParamSource source = ParamSource::kEstimator;
  const ParamTensor* tensor = nullptr;
  // When off, the coded alphabet spans the widest interval any image could
  // need instead of the interval this image actually uses.
  bool interval_reduction = true;
  int threads = 0;
};

struct DecodeOptions {
  // Required iff the file was encoded from a parameter tensor; the tensor
  // travels out of band.
  const ParamTensor* tensor = nullptr;
  int threads = 0;
};

// Full pipeline: base layer, residual quantization, entropy coding,
// container assembly.  The trailer carries a CRC32 of the reconstructed
// samples so decoders can prove they reproduced the encoder's output.
std::vector<uint8_t> encode_file(const ImagePlane& image,
                                 const EncodeConfig& config);

// Decodes a container to the (near-)lossless reconstruction, verifying the
// checksum.
ImagePlane decode_file(std::span<const uint8_t> bytes,
                       const DecodeOptions& options = {});

// Size accounting for a container, without decoding the payload.  Rates
// are bits per subpixel over height * width * channels; the base figure
// covers the header, length table, and base payload, the residual figure
// the segments and trailer, and the two sum exactly to the total.
struct RateReport {
  uint32_t height = 0;
  uint32_t width = 0;
  uint32_t channels = 0;
  int tau = 0;
  size_t patches = 0;
  size_t total_bytes = 0;
  size_t base_bytes = 0;
  size_t residual_bytes = 0;
  double bpsp_total = 0.0;
  double bpsp_base = 0.0;
  double bpsp_residual = 0.0;
};

RateReport stats(std::span<const uint8_t> bytes);

inline double compute_bpsp(size_t bytes, uint64_t subpixels) {
  return 8.0 * double(bytes) / double(subpixels);
}

// Widest symbol a residual grid can hold for a given tau: 255 when
// lossless, otherwise the largest quantizer output for inputs up to 255.
int full_range_bound(Tau tau);

}  // namespace lpr
