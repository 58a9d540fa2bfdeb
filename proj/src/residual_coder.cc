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

#include "lpr/residual_coder.h"

#include <array>

#include "lpr/parallel.h"

namespace lpr {

namespace {

// Same-channel coded residuals at the context offsets, skipping positions
// outside the patch (masks never cross a patch edge) or the image.
int gather_context(const ResidualGrid& grid, const PatchRect& rect,
                   std::span<const std::pair<int, int>> offsets, uint32_t r,
                   uint32_t c, uint32_t ch, std::span<int> out) {
  int n = 0;
  for (const auto& [dr, dc] : offsets) {
    const int rr = int(r) + dr;
    const int cc = int(c) + dc;
    if (rr < 0 || cc < 0 || rr >= int(rect.rows) || cc >= int(rect.cols))
      continue;
    out[n++] = grid.at(rect.row0 + uint32_t(rr), rect.col0 + uint32_t(cc), ch);
  }
  return n;
}

// Turns final mixture parameters into coder-ready frequency tables, with a
// per-channel single-entry memo: single-component models recur constantly
// (flat regions give identical context statistics), and rebuilding the
// table is the expensive step.
class PixelModel {
 public:
  explicit PixelModel(const ResidualCodingConfig& cfg)
      : cfg_(cfg), qs_(quantized_support(cfg.support, cfg.tau)) {
    pmf_.resize(size_t(cfg.support.count()));
    qpmf_.resize(size_t(qs_.count()));
  }

  const SymbolSupport& coded_support() const { return qs_; }

  const QuantizedCdf& cdf_for(int ch, const MixtureParams& m) {
    if (m.mixtures == 1 && memo_valid_[ch] && memo_mu_[ch] == m.mean[0] &&
        memo_sigma_[ch] == m.scale[0])
      return memo_cdf_[ch];
    discrete_pmf(m, cfg_.support, pmf_);
    quantize_pmf_into(pmf_, cfg_.support, cfg_.tau, qpmf_);
    build_cdf_into(qpmf_, qs_, memo_cdf_[ch]);
    memo_valid_[ch] = m.mixtures == 1;
    memo_mu_[ch] = m.mean[0];
    memo_sigma_[ch] = m.scale[0];
    return memo_cdf_[ch];
  }

 private:
  const ResidualCodingConfig& cfg_;
  SymbolSupport qs_;
  std::vector<double> pmf_;
  std::vector<double> qpmf_;
  std::array<QuantizedCdf, 3> memo_cdf_;
  std::array<double, 3> memo_mu_{};
  std::array<double, 3> memo_sigma_{};
  std::array<bool, 3> memo_valid_{};
};

std::vector<uint8_t> encode_patch(
    const ResidualGrid& coded, const PatchRect& rect,
    const ResidualCodingConfig& cfg,
    std::span<const std::pair<int, int>> offsets) {
  const uint32_t channels = coded.channels;
  PixelModel model(cfg);
  const SymbolSupport& qs = model.coded_support();
  RangeEncoder enc;

  const auto emit = [&](const QuantizedCdf& cdf, int value) {
    if (!qs.contains(value))
      fail(ErrorCode::kSymbolOutOfRange,
           "coded residual outside the symbol alphabet");
    enc.encode_symbol(cdf, qs.index_of(value));
  };

  if (cfg.source == ParamSource::kEstimator) {
    // Parameter pass: one wavefront group at a time.  Pixels in a group
    // only depend on earlier groups, so the group's estimates are
    // order-independent (and could be computed concurrently).
    const Schedule schedule = build_schedule(rect.rows, rect.cols, cfg.context);
    std::vector<double> mu(size_t(rect.rows) * rect.cols * channels);
    std::vector<double> sigma(mu.size());
    std::vector<int> ctx(offsets.size());
    for (size_t g = 0; g < schedule.groups(); ++g) {
      for (uint32_t i = schedule.group_start[g]; i < schedule.group_start[g + 1];
           ++i) {
        const auto [r, c] = schedule.positions[i];
        for (uint32_t ch = 0; ch < channels; ++ch) {
          const int n = gather_context(coded, rect, offsets, r, c, ch, ctx);
          const MixtureParams m =
              estimate_params(std::span<const int>(ctx.data(), size_t(n)));
          const size_t at = (size_t(r) * rect.cols + c) * channels + ch;
          mu[at] = m.mean[0];
          sigma[at] = m.scale[0];
        }
      }
    }

    // Emission pass: strictly raster, the order the decoder consumes.
    MixtureParams m;
    m.mixtures = 1;
    m.weight[0] = 1.0;
    for (uint32_t r = 0; r < rect.rows; ++r)
      for (uint32_t c = 0; c < rect.cols; ++c)
        for (uint32_t ch = 0; ch < channels; ++ch) {
          const size_t at = (size_t(r) * rect.cols + c) * channels + ch;
          m.mean[0] = mu[at];
          m.scale[0] = sigma[at];
          emit(model.cdf_for(int(ch), m),
               coded.at(rect.row0 + r, rect.col0 + c, ch));
        }
  } else {
    std::array<int, 3> prev{};
    for (uint32_t r = 0; r < rect.rows; ++r)
      for (uint32_t c = 0; c < rect.cols; ++c) {
        const PixelParams px =
            cfg.tensor->pixel_params(rect.row0 + r, rect.col0 + c);
        for (uint32_t ch = 0; ch < channels; ++ch) {
          const MixtureParams m = px.channel_mixture(
              int(ch), std::span<const int>(prev.data(), ch));
          const int value = coded.at(rect.row0 + r, rect.col0 + c, ch);
          emit(model.cdf_for(int(ch), m), value);
          prev[ch] = value;
        }
      }
  }

  enc.flush();
  return enc.take();
}

void decode_patch(ResidualGrid& out, const PatchRect& rect,
                  std::span<const uint8_t> segment,
                  const ResidualCodingConfig& cfg,
                  std::span<const std::pair<int, int>> offsets) {
  const uint32_t channels = out.channels;
  PixelModel model(cfg);
  const SymbolSupport& qs = model.coded_support();
  RangeDecoder dec(segment);

  if (cfg.source == ParamSource::kEstimator) {
    // Parameters are recomputed just in time from residuals decoded so
    // far; every context offset is raster-causal, so they are all
    // available.  The estimates match the encoder's wavefront pass value
    // for value because both read the same coded residuals.
    std::vector<int> ctx(offsets.size());
    for (uint32_t r = 0; r < rect.rows; ++r)
      for (uint32_t c = 0; c < rect.cols; ++c)
        for (uint32_t ch = 0; ch < channels; ++ch) {
          const int n = gather_context(out, rect, offsets, r, c, ch, ctx);
          const MixtureParams m =
              estimate_params(std::span<const int>(ctx.data(), size_t(n)));
          const int index = dec.decode_symbol(model.cdf_for(int(ch), m));
          out.at(rect.row0 + r, rect.col0 + c, ch) =
              int16_t(qs.value_at(index));
        }
  } else {
    std::array<int, 3> prev{};
    for (uint32_t r = 0; r < rect.rows; ++r)
      for (uint32_t c = 0; c < rect.cols; ++c) {
        const PixelParams px =
            cfg.tensor->pixel_params(rect.row0 + r, rect.col0 + c);
        for (uint32_t ch = 0; ch < channels; ++ch) {
          const MixtureParams m = px.channel_mixture(
              int(ch), std::span<const int>(prev.data(), ch));
          const int index = dec.decode_symbol(model.cdf_for(int(ch), m));
          const int value = qs.value_at(index);
          out.at(rect.row0 + r, rect.col0 + c, ch) = int16_t(value);
          prev[ch] = value;
        }
      }
  }
}

}  // namespace

void ResidualCodingConfig::validate(uint32_t height, uint32_t width,
                                    uint32_t channels) const {
  if (height == 0 || width == 0)
    fail(ErrorCode::kBadConfig, "empty image");
  if (channels != 1 && channels != 3)
    fail(ErrorCode::kBadConfig, "residual layer supports 1 or 3 channels");
  if (support.stride != 1)
    fail(ErrorCode::kBadConfig, "evaluation support must have stride 1");
  context.validate();
  if (patch_size == 0 || patch_size > 0xFFFF)
    fail(ErrorCode::kBadConfig, "patch size out of range");
  if (patch_size <= uint32_t((context.kernel + 1) / 2))
    fail(ErrorCode::kBadConfig,
         "patch size must exceed half the context kernel");
  if (source == ParamSource::kTensor) {
    if (tensor == nullptr)
      fail(ErrorCode::kBadConfig, "parameter tensor required but not given");
    if (tensor->height != height || tensor->width != width ||
        uint32_t(tensor->channels) != channels)
      fail(ErrorCode::kShapeMismatch, "parameter tensor shape mismatch");
  }
}

std::vector<std::vector<uint8_t>> encode_residual_layer(
    const ResidualGrid& coded, const ResidualCodingConfig& config) {
  config.validate(coded.height, coded.width, coded.channels);
  const std::vector<PatchRect> rects =
      tile(coded.height, coded.width, config.patch_size);
  const auto offsets = context_offsets(config.context);
  std::vector<std::vector<uint8_t>> segments(rects.size());
  parallel_for(rects.size(), config.threads, [&](size_t i) {
    segments[i] = encode_patch(coded, rects[i], config, offsets);
  });
  return segments;
}

ResidualGrid decode_residual_layer(
    std::span<const std::vector<uint8_t>> segments, uint32_t height,
    uint32_t width, uint32_t channels, const ResidualCodingConfig& config) {
  config.validate(height, width, channels);
  const std::vector<PatchRect> rects = tile(height, width, config.patch_size);
  if (segments.size() != rects.size())
    fail(ErrorCode::kShapeMismatch,
         "segment count does not match the patch tiling");
  const auto offsets = context_offsets(config.context);
  ResidualGrid out(height, width, channels);
  // Patches touch disjoint regions of the grid and their contexts never
  // leave their own patch, so they decode concurrently.
  parallel_for(rects.size(), config.threads, [&](size_t i) {
    decode_patch(out, rects[i], segments[i], config, offsets);
  });
  return out;
}

}  // namespace lpr
