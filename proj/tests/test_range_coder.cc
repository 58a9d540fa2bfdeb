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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "lpr/range_coder.h"

using namespace lpr;

TEST_CASE("frequency tables: known splits") {
  const SymbolSupport two(0, 1, 1);

  const QuantizedCdf even = build_cdf(std::vector<double>{0.5, 0.5}, two);
  CHECK(even.freq(0) == 32768);
  CHECK(even.freq(1) == 32768);

  // A vanishing probability still gets one slot so the symbol stays
  // codable; the dominant symbol pays for it.
  const QuantizedCdf skew =
      build_cdf(std::vector<double>{1.0 - 1e-9, 1e-9}, two);
  CHECK(skew.freq(0) == 65535);
  CHECK(skew.freq(1) == 1);

  const QuantizedCdf lone = build_cdf(std::vector<double>{1.0},
                                      SymbolSupport(7, 7, 1));
  CHECK(lone.cum == std::vector<uint32_t>{0, 65536});

  const QuantizedCdf quarters =
      build_cdf(std::vector<double>{0.5, 0.25, 0.25}, SymbolSupport(0, 2, 1));
  CHECK(quarters.freq(0) == 32768);
  CHECK(quarters.freq(1) == 16384);
  CHECK(quarters.freq(2) == 16384);

  // Equal remainders: the leftover grain goes to the lowest index.
  const QuantizedCdf thirds =
      build_cdf(std::vector<double>{1.0, 1.0, 1.0}, SymbolSupport(0, 2, 1));
  CHECK(thirds.freq(0) == 21846);
  CHECK(thirds.freq(1) == 21845);
  CHECK(thirds.freq(2) == 21845);
}

TEST_CASE("frequency tables: structural invariants under stress") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> mass(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + int(rng() % 509);
    std::vector<double> pmf(static_cast<size_t>(n));
    for (double& p : pmf) {
      p = mass(rng);
      if (rng() % 4 == 0) p *= 1e-12;  // sprinkle near-zeros
    }
    const QuantizedCdf cdf = build_cdf(pmf, SymbolSupport(0, n - 1, 1));
    CHECK(cdf.cum.front() == 0);
    CHECK(cdf.cum.back() == kProbTotal);
    for (int i = 0; i < n; ++i) CHECK(cdf.freq(i) >= 1);
  }

  // All-zero input degenerates to uniform.
  const QuantizedCdf uniform =
      build_cdf(std::vector<double>(4, 0.0), SymbolSupport(0, 3, 1));
  for (int i = 0; i < 4; ++i) CHECK(uniform.freq(i) == 16384);

  CHECK_THROWS_AS(
      build_cdf(std::vector<double>{0.5, -0.5}, SymbolSupport(0, 1, 1)), Error);
  CHECK_THROWS_AS(
      build_cdf(std::vector<double>{0.5, std::nan("")}, SymbolSupport(0, 1, 1)),
      Error);
}

TEST_CASE("stream round-trip against a fixed model") {
  const SymbolSupport support(-12, 12, 1);
  std::vector<double> pmf(size_t(support.count()));
  for (int i = 0; i < support.count(); ++i) {
    const int v = support.value_at(i);
    pmf[size_t(i)] = std::exp(-std::abs(v) / 3.0);
  }
  const QuantizedCdf cdf = build_cdf(pmf, support);

  std::mt19937 rng(99);
  std::discrete_distribution<int> sample(pmf.begin(), pmf.end());
  std::vector<int> indices(10000);
  for (int& s : indices) s = sample(rng);

  const std::vector<uint8_t> coded = encode_stream(indices, cdf);
  CHECK(coded.size() >= 5);
  CHECK(coded[0] == 0);  // first byte is the encoder's initial cache
  CHECK(decode_stream(coded, cdf, indices.size()) == indices);
}

TEST_CASE("round-trip with a different model for every symbol") {
  // Exercises the adaptive pattern the codec actually uses: the model
  // switches per symbol and decoder-side search must stay in lockstep.
  const SymbolSupport support(0, 15, 1);
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> mass(0.01, 1.0);

  std::vector<QuantizedCdf> models(64);
  for (QuantizedCdf& m : models) {
    std::vector<double> pmf(16);
    for (double& p : pmf) p = mass(rng);
    m = build_cdf(pmf, support);
  }

  std::vector<int> indices(5000);
  RangeEncoder enc;
  for (size_t i = 0; i < indices.size(); ++i) {
    const QuantizedCdf& m = models[i % models.size()];
    std::discrete_distribution<int> sample(16, 0.0, 16.0, [&](double x) {
      return double(m.freq(int(x)));
    });
    indices[i] = sample(rng);
    enc.encode_symbol(m, indices[i]);
  }
  enc.flush();
  const std::vector<uint8_t> coded = enc.take();

  RangeDecoder dec(coded);
  for (size_t i = 0; i < indices.size(); ++i)
    CHECK(dec.decode_symbol(models[i % models.size()]) == indices[i]);
}

TEST_CASE("empty stream and exhaustion behavior") {
  RangeEncoder enc;
  enc.flush();
  const std::vector<uint8_t> coded = enc.take();
  CHECK(coded.size() == 5);
  CHECK(coded[0] == 0);

  CHECK_THROWS_AS(RangeDecoder(std::vector<uint8_t>{1, 2, 3}), Error);

  // Decoding far more symbols than were coded must eventually fail rather
  // than loop forever; sum of freq renormalizations exhausts the buffer.
  const SymbolSupport support(0, 255, 1);
  const QuantizedCdf cdf =
      build_cdf(std::vector<double>(256, 1.0), support);
  std::vector<int> few = {1, 2, 3};
  const std::vector<uint8_t> bytes = encode_stream(few, cdf);
  RangeDecoder dec(bytes);
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 1000; ++i) (void)dec.decode_symbol(cdf);
      }(),
      Error);
}

TEST_CASE("coded size tracks the model cross-entropy") {
  const SymbolSupport support(0, 1, 1);
  const QuantizedCdf cdf = build_cdf(std::vector<double>{0.99, 0.01}, support);
  std::mt19937 rng(3);
  std::bernoulli_distribution rare(0.01);
  std::vector<int> indices(100000);
  double bits = 0.0;
  for (int& s : indices) {
    s = rare(rng) ? 1 : 0;
    bits -= std::log2(double(cdf.freq(s)) / double(kProbTotal));
  }
  const std::vector<uint8_t> coded = encode_stream(indices, cdf);
  CHECK(double(coded.size()) <= bits / 8.0 * 1.001 + 32.0);
  CHECK(decode_stream(coded, cdf, indices.size()) == indices);
}

TEST_CASE("residual intervals and the supports they induce") {
  ResidualGrid grid(2, 2, 1);
  grid.samples = {int16_t(-9), int16_t(4), int16_t(0), int16_t(13)};
  const ResidualInterval interval = residual_interval(grid);
  CHECK(interval.min == -9);
  CHECK(interval.max == 13);

  CHECK(interval_support(interval, 0) == SymbolSupport(-9, 13, 1));
  CHECK(interval_support(interval, 2) == SymbolSupport(-11, 15, 1));

  ResidualGrid flat(1, 4, 1);
  const ResidualInterval point = residual_interval(flat);
  CHECK(point.min == 0);
  CHECK(point.max == 0);
  CHECK(interval_support(point, 0).count() == 1);
}
