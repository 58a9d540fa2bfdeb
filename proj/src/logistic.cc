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

#include "lpr/logistic.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "lpr/bytes.h"

namespace lpr {

namespace {

constexpr char kTensorMagic[4] = {'L', 'M', 'T', '1'};

double softplus(double t) {
  if (t > 30.0) return t;  // log1p(exp(t)) == t to double precision
  return std::log1p(std::exp(t));
}

}  // namespace

double sigmoid(double t) {
  if (t >= 40.0) return 1.0;
  if (t <= -40.0) return 0.0;
  return 1.0 / (1.0 + std::exp(-t));
}

MixtureParams PixelParams::channel_mixture(int channel,
                                           std::span<const int> prev) const {
  if (channel < 0 || channel >= channels)
    fail(ErrorCode::kBadConfig, "channel index out of range");
  if (int(prev.size()) < channel)
    fail(ErrorCode::kBadConfig, "missing earlier-channel residuals");
  const int k_count = mixtures;
  MixtureParams m;
  m.mixtures = k_count;
  m.weight = weight;
  for (int k = 0; k < k_count; ++k) {
    double mu = mean[size_t(channel) * k_count + k];
    if (channels == 3) {
      if (channel == 1) {
        mu += beta[k] * prev[0];
      } else if (channel == 2) {
        mu += beta[size_t(k_count) + k] * prev[0] +
              beta[2 * size_t(k_count) + k] * prev[1];
      }
    }
    m.mean[k] = mu;
    m.scale[k] = scale[size_t(channel) * k_count + k];
  }
  return m;
}

void discrete_pmf(const MixtureParams& params, SymbolSupport support,
                  std::span<double> out) {
  if (support.stride != 1)
    fail(ErrorCode::kBadConfig, "pmf evaluation needs a stride-1 support");
  const int n = support.count();
  if (int(out.size()) != n)
    fail(ErrorCode::kBadConfig, "pmf output size does not match support");
  std::fill(out.begin(), out.end(), 0.0);
  for (int k = 0; k < params.mixtures; ++k) {
    const double w = params.weight[k];
    if (w <= 0.0) continue;
    const double mu = params.mean[k];
    const double inv_s = 1.0 / params.scale[k];
    // March the CDF across the support once; each value's mass is the CDF
    // increment over its unit-wide cell, with both tails folded into the
    // terminal cells so the column sums to w exactly.
    double lower = 0.0;
    for (int i = 0; i < n; ++i) {
      const double upper =
          i == n - 1 ? 1.0
                     : sigmoid((support.value_at(i) + 0.5 - mu) * inv_s);
      out[i] += w * (upper - lower);
      lower = upper;
    }
  }
}

MixtureParams estimate_params(std::span<const int> context) {
  MixtureParams m;
  m.mixtures = 1;
  m.weight[0] = 1.0;
  if (context.empty()) {
    m.mean[0] = 0.0;
    m.scale[0] = 1.0;
    return m;
  }
  double sum = 0.0;
  for (int v : context) sum += v;
  const double mu = sum / double(context.size());
  double abs_dev = 0.0;
  for (int v : context) abs_dev += std::abs(v - mu);
  abs_dev /= double(context.size());
  m.mean[0] = mu;
  m.scale[0] = std::max(1.0, 1.5 * abs_dev);
  return m;
}

ParamTensor::ParamTensor(uint32_t h, uint32_t w, int k, int c)
    : height(h), width(w), mixtures(k), channels(c) {
  if (k < 1 || k > kMaxMixtures)
    fail(ErrorCode::kBadConfig, "mixture count out of range");
  if (c != 1 && c != 3)
    fail(ErrorCode::kBadConfig, "tensor supports 1 or 3 channels");
  raw.assign(size_t(h) * w * pixel_stride(), 0.0f);
}

size_t ParamTensor::pixel_stride() const {
  const size_t k = size_t(mixtures);
  return k + 2 * size_t(channels) * k + (channels == 3 ? 3 * k : 0);
}

std::span<float> ParamTensor::raw_pixel(uint32_t row, uint32_t col) {
  const size_t stride = pixel_stride();
  return std::span<float>(raw).subspan((size_t(row) * width + col) * stride,
                                       stride);
}

std::span<const float> ParamTensor::raw_pixel(uint32_t row,
                                              uint32_t col) const {
  const size_t stride = pixel_stride();
  return std::span<const float>(raw).subspan(
      (size_t(row) * width + col) * stride, stride);
}

PixelParams ParamTensor::pixel_params(uint32_t row, uint32_t col) const {
  if (row >= height || col >= width)
    fail(ErrorCode::kBadConfig, "tensor pixel out of range");
  const std::span<const float> px = raw_pixel(row, col);
  const int k_count = mixtures;
  PixelParams p;
  p.mixtures = k_count;
  p.channels = channels;

  // Weights: softmax over the stored logits, stabilized by the max logit.
  double max_logit = px[0];
  for (int k = 1; k < k_count; ++k) max_logit = std::max(max_logit, double(px[k]));
  double z = 0.0;
  for (int k = 0; k < k_count; ++k) {
    p.weight[k] = std::exp(double(px[k]) - max_logit);
    z += p.weight[k];
  }
  for (int k = 0; k < k_count; ++k) p.weight[k] /= z;

  size_t at = size_t(k_count);
  for (int i = 0; i < channels * k_count; ++i) p.mean[i] = px[at++];
  for (int i = 0; i < channels * k_count; ++i)
    p.scale[i] = std::max(kSigmaMin, softplus(px[at++]));
  if (channels == 3)
    for (int i = 0; i < 3 * k_count; ++i) p.beta[i] = px[at++];
  return p;
}

ParamTensor load_param_tensor(std::span<const uint8_t> bytes) {
  ByteReader reader(bytes);
  char magic[4];
  for (char& c : magic) c = char(reader.u8());
  if (std::memcmp(magic, kTensorMagic, 4) != 0)
    fail(ErrorCode::kBadParamTensor, "bad parameter tensor magic");
  ParamTensor t;
  t.height = reader.u32le();
  t.width = reader.u32le();
  const uint32_t k = reader.u32le();
  const uint32_t c = reader.u32le();
  if (k < 1 || k > uint32_t(kMaxMixtures))
    fail(ErrorCode::kBadParamTensor, "mixture count out of range");
  if (c != 1 && c != 3)
    fail(ErrorCode::kBadParamTensor, "tensor supports 1 or 3 channels");
  if (t.height == 0 || t.width == 0)
    fail(ErrorCode::kBadParamTensor, "empty tensor shape");
  t.mixtures = int(k);
  t.channels = int(c);
  const size_t expected = size_t(t.height) * t.width * t.pixel_stride();
  if (reader.remaining() != expected * 4)
    fail(ErrorCode::kBadParamTensor, "tensor payload length mismatch");
  t.raw.resize(expected);
  for (size_t i = 0; i < expected; ++i) {
    const uint32_t word = reader.u32le();
    const float value = std::bit_cast<float>(word);
    if (!std::isfinite(value))
      fail(ErrorCode::kBadParamTensor, "tensor contains a non-finite value");
    t.raw[i] = value;
  }
  return t;
}

std::vector<uint8_t> serialize_param_tensor(const ParamTensor& tensor) {
  std::vector<uint8_t> out;
  out.reserve(20 + tensor.raw.size() * 4);
  for (char c : kTensorMagic) out.push_back(uint8_t(c));
  put_u32le(out, tensor.height);
  put_u32le(out, tensor.width);
  put_u32le(out, uint32_t(tensor.mixtures));
  put_u32le(out, uint32_t(tensor.channels));
  for (float value : tensor.raw) put_u32le(out, std::bit_cast<uint32_t>(value));
  return out;
}

}  // namespace lpr
