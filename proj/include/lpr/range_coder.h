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
#include "lpr/support.h"

namespace lpr {

// The coder works on 16-bit fixed-point probabilities: every CDF spans
// exactly kProbTotal.
inline constexpr int kProbBits = 16;
inline constexpr uint32_t kProbTotal = 1u << kProbBits;

// A model frozen to integer frequencies: cum has support.count() + 1
// entries, cum.front() == 0, cum.back() == kProbTotal, and every symbol
// keeps a frequency of at least 1 so it stays codable.
struct QuantizedCdf {
  SymbolSupport support;
  std::vector<uint32_t> cum;

  uint32_t freq(int index) const { return cum[index + 1] - cum[index]; }
};

// Converts a PMF over `support` into integer frequencies summing to
// kProbTotal: proportional shares rounded by largest remainder (ties break
// toward lower indices), then any zero frequency is raised to 1 at the
// expense of the currently largest one.  A PMF that sums to zero or
// contains no usable mass becomes uniform.
QuantizedCdf build_cdf(std::span<const double> pmf, SymbolSupport support);
void build_cdf_into(std::span<const double> pmf, SymbolSupport support,
                    QuantizedCdf& out);

// Byte-oriented range encoder (carry-counting variant).  Streams are
// self-delimiting only via external symbol counts; flush() appends the
// final bytes and must be called exactly once.
class RangeEncoder {
 public:
  void encode(uint32_t cum_start, uint32_t freq);
  void encode_symbol(const QuantizedCdf& cdf, int index);
  void flush();
  std::vector<uint8_t> take() { return std::move(bytes_); }
  size_t size() const { return bytes_.size(); }

 private:
  void shift_low();

  std::vector<uint8_t> bytes_;
  uint64_t low_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint8_t cache_ = 0;
  uint64_t cache_size_ = 1;
};

// Matching decoder.  Reading past the end of the buffer raises
// kStreamExhausted rather than fabricating symbols.
class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const uint8_t> bytes);

  // Narrows range for the next symbol and returns a value in
  // [0, kProbTotal); the caller locates the symbol whose [cum, cum + freq)
  // slice contains it and must then call consume() with that slice.
  uint32_t decode_target();
  void consume(uint32_t cum_start, uint32_t freq);
  // decode_target + CDF search + consume in one step; returns the symbol
  // index within cdf.support.
  int decode_symbol(const QuantizedCdf& cdf);

 private:
  uint8_t read_byte();

  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint32_t code_ = 0;
};

// One-shot helpers for coding a whole sequence against a single model.
std::vector<uint8_t> encode_stream(std::span<const int> indices,
                                   const QuantizedCdf& cdf);
std::vector<int> decode_stream(std::span<const uint8_t> bytes,
                               const QuantizedCdf& cdf, size_t count);

// Closed range actually taken by a residual grid; shrinking the coded
// alphabet to it is what keeps flat images cheap.
struct ResidualInterval {
  int min = 0;
  int max = 0;
};

ResidualInterval residual_interval(const ResidualGrid& grid);

// Stride-1 support over which mixture PMFs are evaluated for a coded
// interval: the interval itself when tau is 0, widened by tau on each side
// otherwise so every bin's constituent values are covered.
SymbolSupport interval_support(ResidualInterval interval, int tau);

}  // namespace lpr
