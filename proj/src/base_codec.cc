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

#include "lpr/base_codec.h"

#include <algorithm>

namespace lpr {

namespace {

// Box average over the factor x factor block at (by, bx), clamping taps to
// the image so edge blocks replicate border samples; rounds half up.
std::vector<uint8_t> subsample(const ImagePlane& image, int factor) {
  const uint32_t sh = subsampled_extent(image.height, factor);
  const uint32_t sw = subsampled_extent(image.width, factor);
  std::vector<uint8_t> out(size_t(sh) * sw * image.channels);
  const uint32_t taps = uint32_t(factor) * uint32_t(factor);
  size_t at = 0;
  for (uint32_t by = 0; by < sh; ++by)
    for (uint32_t bx = 0; bx < sw; ++bx)
      for (uint32_t c = 0; c < image.channels; ++c) {
        uint32_t sum = 0;
        for (int dy = 0; dy < factor; ++dy) {
          const uint32_t y =
              std::min(by * uint32_t(factor) + uint32_t(dy), image.height - 1);
          for (int dx = 0; dx < factor; ++dx) {
            const uint32_t x =
                std::min(bx * uint32_t(factor) + uint32_t(dx), image.width - 1);
            sum += image.at(y, x, c);
          }
        }
        out[at++] = uint8_t((sum + taps / 2) / taps);
      }
  return out;
}

// Bilinear upsampling with 8.8 fixed-point sample coordinates.  The
// half-pixel mapping sy = (y + 0.5) / factor - 0.5 is exact in this
// representation because 256 / factor is an integer for every supported
// factor.
struct TapPlan {
  std::vector<uint32_t> lo, hi;
  std::vector<uint32_t> w;  // weight of the hi tap, in [0, 256)
};

TapPlan plan_taps(uint32_t out_extent, uint32_t src_extent, int factor) {
  TapPlan plan;
  plan.lo.resize(out_extent);
  plan.hi.resize(out_extent);
  plan.w.resize(out_extent);
  const int64_t step = 256 / factor;  // (0.5 / factor) * 512 per output pixel
  for (uint32_t i = 0; i < out_extent; ++i) {
    int64_t fp = int64_t(2 * i + 1) * (step / 2) - 128;
    fp = std::clamp<int64_t>(fp, 0, int64_t(src_extent - 1) * 256);
    plan.lo[i] = uint32_t(fp >> 8);
    plan.hi[i] = std::min(plan.lo[i] + 1, src_extent - 1);
    plan.w[i] = uint32_t(fp & 0xFF);
  }
  return plan;
}

ImagePlane upsample(std::span<const uint8_t> sub, uint32_t height,
                    uint32_t width, uint32_t channels, int factor) {
  const uint32_t sh = subsampled_extent(height, factor);
  const uint32_t sw = subsampled_extent(width, factor);
  const TapPlan rows = plan_taps(height, sh, factor);
  const TapPlan cols = plan_taps(width, sw, factor);
  ImagePlane out(height, width, channels);
  const auto src = [&](uint32_t y, uint32_t x, uint32_t c) -> uint32_t {
    return sub[(size_t(y) * sw + x) * channels + c];
  };
  for (uint32_t y = 0; y < height; ++y) {
    const uint32_t y0 = rows.lo[y], y1 = rows.hi[y], wy = rows.w[y];
    for (uint32_t x = 0; x < width; ++x) {
      const uint32_t x0 = cols.lo[x], x1 = cols.hi[x], wx = cols.w[x];
      const uint32_t w00 = (256 - wy) * (256 - wx);
      const uint32_t w01 = (256 - wy) * wx;
      const uint32_t w10 = wy * (256 - wx);
      const uint32_t w11 = wy * wx;
      for (uint32_t c = 0; c < channels; ++c) {
        const uint32_t acc = src(y0, x0, c) * w00 + src(y0, x1, c) * w01 +
                             src(y1, x0, c) * w10 + src(y1, x1, c) * w11;
        out.at(y, x, c) = uint8_t((acc + 32768) >> 16);
      }
    }
  }
  return out;
}

}  // namespace

void BaseCodecConfig::validate() const {
  switch (id) {
    case BaseCodecId::kNull:
      return;
    case BaseCodecId::kDownsample:
      if (factor != 2 && factor != 4 && factor != 8)
        fail(ErrorCode::kBadConfig, "downsampling factor must be 2, 4, or 8");
      return;
    default:
      fail(ErrorCode::kUnknownCodec, "unknown base codec id");
  }
}

BaseEncodeResult base_encode(const ImagePlane& image,
                             const BaseCodecConfig& config) {
  config.validate();
  BaseEncodeResult result;
  if (config.id == BaseCodecId::kDownsample)
    result.payload = subsample(image, config.factor);
  result.lossy = base_decode(result.payload, config, image.height, image.width,
                             image.channels);
  return result;
}

ImagePlane base_decode(std::span<const uint8_t> payload,
                       const BaseCodecConfig& config, uint32_t height,
                       uint32_t width, uint32_t channels) {
  config.validate();
  if (config.id == BaseCodecId::kNull) {
    if (!payload.empty())
      fail(ErrorCode::kPayloadLength, "null base codec expects no payload");
    return ImagePlane(height, width, channels);  // zero-filled
  }
  const size_t expected = size_t(subsampled_extent(height, config.factor)) *
                          subsampled_extent(width, config.factor) * channels;
  if (payload.size() != expected)
    fail(ErrorCode::kPayloadLength, "base payload length mismatch");
  return upsample(payload, height, width, channels, config.factor);
}

}  // namespace lpr
