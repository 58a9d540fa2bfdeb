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

#include "lpr/range_coder.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lpr {

namespace {

constexpr uint32_t kTopValue = 1u << 24;

}  // namespace

void build_cdf_into(std::span<const double> pmf, SymbolSupport support,
                    QuantizedCdf& out) {
  const int n = support.count();
  if (int(pmf.size()) != n)
    fail(ErrorCode::kBadConfig, "pmf size does not match support");
  out.support = support;
  out.cum.resize(size_t(n) + 1);
  out.cum[0] = 0;
  if (n == 1) {
    out.cum[1] = kProbTotal;
    return;
  }
  if (n > int(kProbTotal))
    fail(ErrorCode::kBadConfig, "support too large for 16-bit frequencies");

  double sum = 0.0;
  for (double p : pmf) {
    if (!std::isfinite(p) || p < 0.0)
      fail(ErrorCode::kBadConfig, "pmf entries must be finite and nonnegative");
    sum += p;
  }

  // Proportional integer shares.  floors[] gets the whole part and the
  // largest fractional remainders claim the deficit, lower index winning
  // ties.  A degenerate pmf falls back to uniform shares.
  static thread_local std::vector<uint32_t> counts;
  static thread_local std::vector<double> remainder;
  static thread_local std::vector<int> order;
  counts.assign(size_t(n), 0);
  remainder.assign(size_t(n), 0.0);
  int64_t assigned = 0;
  for (int i = 0; i < n; ++i) {
    const double share =
        sum > 0.0 ? pmf[i] / sum * double(kProbTotal)
                  : double(kProbTotal) / double(n);
    const double fl = std::floor(share);
    counts[i] = uint32_t(fl);
    remainder[i] = share - fl;
    assigned += int64_t(fl);
  }
  int64_t deficit = int64_t(kProbTotal) - assigned;

  if (deficit > 0) {
    order.resize(size_t(n));
    std::iota(order.begin(), order.end(), 0);
    const auto more_deserving = [&](int a, int b) {
      if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
      return a < b;
    };
    const size_t take = std::min<size_t>(size_t(deficit), order.size());
    std::nth_element(order.begin(), order.begin() + (take - 1), order.end(),
                     more_deserving);
    for (size_t i = 0; i < take; ++i) ++counts[size_t(order[i])];
    deficit -= int64_t(take);
  }
  // Floating-point drift can leave a residue after one pass of bumps (or
  // push the floors over the budget); settle it against the largest entry.
  while (deficit != 0) {
    const auto largest = std::max_element(counts.begin(), counts.end());
    if (deficit > 0) {
      ++*largest;
      --deficit;
    } else {
      if (*largest <= 1)
        fail(ErrorCode::kBadConfig, "cannot balance frequency table");
      --*largest;
      ++deficit;
    }
  }

  // Every symbol in the support must stay decodable: promote zeros to 1,
  // paying out of the currently richest symbol.
  for (int i = 0; i < n; ++i) {
    if (counts[i] != 0) continue;
    const auto largest = std::max_element(counts.begin(), counts.end());
    if (*largest <= 1)
      fail(ErrorCode::kBadConfig, "support too large for 16-bit frequencies");
    --*largest;
    counts[i] = 1;
  }

  uint32_t acc = 0;
  for (int i = 0; i < n; ++i) {
    acc += counts[i];
    out.cum[size_t(i) + 1] = acc;
  }
}

QuantizedCdf build_cdf(std::span<const double> pmf, SymbolSupport support) {
  QuantizedCdf cdf;
  build_cdf_into(pmf, support, cdf);
  return cdf;
}

void RangeEncoder::shift_low() {
  if (uint32_t(low_) < 0xFF000000u || uint32_t(low_ >> 32) != 0) {
    uint8_t byte = cache_;
    do {
      bytes_.push_back(uint8_t(byte + uint8_t(low_ >> 32)));
      byte = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = uint8_t(low_ >> 24);
  }
  ++cache_size_;
  // 32-bit shift on purpose: bits 24..31 are already accounted for (in the
  // cache byte or the pending-0xFF count) and must not re-enter low.
  low_ = uint32_t(low_) << 8;
}

void RangeEncoder::encode(uint32_t cum_start, uint32_t freq) {
  range_ >>= kProbBits;
  low_ += uint64_t(cum_start) * range_;
  range_ *= freq;
  while (range_ < kTopValue) {
    range_ <<= 8;
    shift_low();
  }
}

void RangeEncoder::encode_symbol(const QuantizedCdf& cdf, int index) {
  if (index < 0 || index + 1 >= int(cdf.cum.size()))
    fail(ErrorCode::kSymbolOutOfRange, "symbol outside the coded support");
  encode(cdf.cum[size_t(index)], cdf.freq(index));
}

void RangeEncoder::flush() {
  for (int i = 0; i < 5; ++i) shift_low();
}

RangeDecoder::RangeDecoder(std::span<const uint8_t> bytes) : bytes_(bytes) {
  for (int i = 0; i < 5; ++i) code_ = (code_ << 8) | read_byte();
}

uint8_t RangeDecoder::read_byte() {
  if (pos_ >= bytes_.size())
    fail(ErrorCode::kStreamExhausted, "coded stream ended early");
  return bytes_[pos_++];
}

uint32_t RangeDecoder::decode_target() {
  range_ >>= kProbBits;
  return std::min(code_ / range_, kProbTotal - 1);
}

void RangeDecoder::consume(uint32_t cum_start, uint32_t freq) {
  code_ -= cum_start * range_;
  range_ *= freq;
  while (range_ < kTopValue) {
    code_ = (code_ << 8) | read_byte();
    range_ <<= 8;
  }
}

int RangeDecoder::decode_symbol(const QuantizedCdf& cdf) {
  const uint32_t target = decode_target();
  const auto it =
      std::upper_bound(cdf.cum.begin(), cdf.cum.end(), target);
  const int index = int(it - cdf.cum.begin()) - 1;
  consume(cdf.cum[size_t(index)], cdf.freq(index));
  return index;
}

std::vector<uint8_t> encode_stream(std::span<const int> indices,
                                   const QuantizedCdf& cdf) {
  RangeEncoder enc;
  for (int index : indices) enc.encode_symbol(cdf, index);
  enc.flush();
  return enc.take();
}

std::vector<int> decode_stream(std::span<const uint8_t> bytes,
                               const QuantizedCdf& cdf, size_t count) {
  RangeDecoder dec(bytes);
  std::vector<int> out(count);
  for (size_t i = 0; i < count; ++i) out[i] = dec.decode_symbol(cdf);
  return out;
}

ResidualInterval residual_interval(const ResidualGrid& grid) {
  if (grid.samples.empty())
    fail(ErrorCode::kBadConfig, "cannot take the interval of an empty grid");
  const auto [lo, hi] =
      std::minmax_element(grid.samples.begin(), grid.samples.end());
  return {int(*lo), int(*hi)};
}

SymbolSupport interval_support(ResidualInterval interval, int tau) {
  if (tau < 0) fail(ErrorCode::kBadConfig, "tau must be nonnegative");
  if (interval.min > interval.max)
    fail(ErrorCode::kBadConfig, "inverted residual interval");
  return SymbolSupport(interval.min - tau, interval.max + tau, 1);
}

}  // namespace lpr
