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
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "lpr/logistic.h"

using namespace lpr;

namespace {

std::vector<double> pmf_of(const MixtureParams& m, SymbolSupport support) {
  std::vector<double> out(size_t(support.count()));
  discrete_pmf(m, support, out);
  return out;
}

MixtureParams unit_logistic(double mu, double sigma) {
  MixtureParams m;
  m.mixtures = 1;
  m.weight[0] = 1.0;
  m.mean[0] = mu;
  m.scale[0] = sigma;
  return m;
}

}  // namespace

TEST_CASE("sigmoid midpoint and saturation") {
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(sigmoid(100.0) == 1.0);
  CHECK(sigmoid(-100.0) == 0.0);
  CHECK(sigmoid(1.0) == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
}

TEST_CASE("standard logistic cell probability matches the closed form") {
  const auto pmf = pmf_of(unit_logistic(0.0, 1.0), SymbolSupport(-64, 64, 1));
  const double s = [](double t) { return 1.0 / (1.0 + std::exp(-t)); }(0.5);
  const double closed_form = s - (1.0 - s);  // S(0.5) - S(-0.5)
  CHECK(std::abs(pmf[64] - closed_form) < 1e-12);
  CHECK(pmf[64] == doctest::Approx(0.2449186624037092).epsilon(1e-12));
}

TEST_CASE("pmfs always sum to one, even when the mass sits off-support") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> mu_dist(-300.0, 300.0);
  std::uniform_real_distribution<double> sigma_dist(1e-3, 40.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pmf = pmf_of(unit_logistic(mu_dist(rng), sigma_dist(rng)),
                            SymbolSupport(-255, 255, 1));
    const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
    CHECK(std::abs(total - 1.0) < 1e-9);
  }

  // All mass far below the support folds into the bottom value.
  const auto folded = pmf_of(unit_logistic(-500.0, 1.0), SymbolSupport(0, 4, 1));
  CHECK(folded[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a mixture is the weighted sum of its components") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> mu_dist(-20.0, 20.0);
  std::uniform_real_distribution<double> sigma_dist(0.3, 9.0);
  std::uniform_real_distribution<double> w_dist(0.05, 1.0);
  const SymbolSupport support(-40, 40, 1);

  for (int trial = 0; trial < 50; ++trial) {
    MixtureParams mix;
    mix.mixtures = 5;
    double wsum = 0.0;
    for (int k = 0; k < 5; ++k) {
      mix.weight[k] = w_dist(rng);
      wsum += mix.weight[k];
      mix.mean[k] = mu_dist(rng);
      mix.scale[k] = sigma_dist(rng);
    }
    for (int k = 0; k < 5; ++k) mix.weight[k] /= wsum;

    const auto mixed = pmf_of(mix, support);
    std::vector<double> oracle(mixed.size(), 0.0);
    for (int k = 0; k < 5; ++k) {
      const auto part = pmf_of(unit_logistic(mix.mean[k], mix.scale[k]), support);
      for (size_t i = 0; i < oracle.size(); ++i)
        oracle[i] += mix.weight[k] * part[i];
    }
    for (size_t i = 0; i < oracle.size(); ++i)
      CHECK(std::abs(mixed[i] - oracle[i]) < 1e-12);
  }
}

TEST_CASE("context moment estimator") {
  const MixtureParams none = estimate_params({});
  CHECK(none.mixtures == 1);
  CHECK(none.mean[0] == 0.0);
  CHECK(none.scale[0] == 1.0);

  const std::vector<int> flat = {3, 3, 3};
  const MixtureParams f = estimate_params(flat);
  CHECK(f.mean[0] == 3.0);
  CHECK(f.scale[0] == 1.0);  // zero deviation floors at 1

  const std::vector<int> spread = {0, 6};
  const MixtureParams s = estimate_params(spread);
  CHECK(s.mean[0] == 3.0);
  CHECK(s.scale[0] == doctest::Approx(4.5));  // 1.5 * mean |v - 3|
}

TEST_CASE("later channels shift their means by earlier coded residuals") {
  PixelParams px;
  px.mixtures = 2;
  px.channels = 3;
  px.weight = {0.25, 0.75};
  for (int ch = 0; ch < 3; ++ch)
    for (int k = 0; k < 2; ++k) {
      px.mean[size_t(ch) * 2 + k] = 10.0 * ch + k;
      px.scale[size_t(ch) * 2 + k] = 1.0 + ch;
    }
  // beta[t * K + k]: t=0 feeds channel 1; t=1,2 feed channel 2.
  px.beta = {0.5, -0.5, 2.0, 0.0, 0.25, 1.0};

  const int r0 = 8, r1 = -4;
  const std::vector<int> prev = {r0, r1};

  const MixtureParams c0 = px.channel_mixture(0, {});
  CHECK(c0.mean[0] == 0.0);
  CHECK(c0.mean[1] == 1.0);

  const MixtureParams c1 = px.channel_mixture(1, std::span<const int>(prev.data(), 1));
  CHECK(c1.mean[0] == doctest::Approx(10.0 + 0.5 * r0));
  CHECK(c1.mean[1] == doctest::Approx(11.0 + -0.5 * r0));
  CHECK(c1.scale[0] == 2.0);

  const MixtureParams c2 = px.channel_mixture(2, prev);
  CHECK(c2.mean[0] == doctest::Approx(20.0 + 2.0 * r0 + 0.25 * r1));
  CHECK(c2.mean[1] == doctest::Approx(21.0 + 0.0 * r0 + 1.0 * r1));
  CHECK(c2.weight[1] == 0.75);
}

TEST_CASE("parameter tensors round-trip and transform on access") {
  ParamTensor t(2, 2, 2, 1);
  // Pixel (0,0): logits {0,0} -> equal weights; means {5,-5}; raw scales
  // {0, -100} -> {log 2, floored}.
  auto px = t.raw_pixel(0, 0);
  px[0] = 0.0f;
  px[1] = 0.0f;
  px[2] = 5.0f;
  px[3] = -5.0f;
  px[4] = 0.0f;
  px[5] = -100.0f;

  const ParamTensor back = load_param_tensor(serialize_param_tensor(t));
  CHECK(back.height == 2);
  CHECK(back.width == 2);
  CHECK(back.mixtures == 2);
  CHECK(back.channels == 1);
  CHECK(back.raw == t.raw);

  const PixelParams p = back.pixel_params(0, 0);
  CHECK(p.weight[0] == doctest::Approx(0.5));
  CHECK(p.weight[1] == doctest::Approx(0.5));
  CHECK(p.mean[0] == 5.0);
  CHECK(p.mean[1] == -5.0);
  CHECK(p.scale[0] == doctest::Approx(std::log(2.0)));
  CHECK(p.scale[1] == kSigmaMin);
}

TEST_CASE("tensor loading rejects malformed input") {
  const ParamTensor t(2, 3, 1, 3);
  std::vector<uint8_t> good = serialize_param_tensor(t);

  auto corrupt = good;
  corrupt[0] = 'X';
  CHECK_THROWS_AS(load_param_tensor(corrupt), Error);

  auto short_payload = good;
  short_payload.resize(short_payload.size() - 4);
  try {
    load_param_tensor(short_payload);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBadParamTensor);
  }

  ParamTensor nan_tensor(1, 1, 1, 1);
  nan_tensor.raw[0] = std::numeric_limits<float>::quiet_NaN();
  CHECK_THROWS_AS(load_param_tensor(serialize_param_tensor(nan_tensor)), Error);

  CHECK_THROWS_AS(ParamTensor(1, 1, 0, 1), Error);
  CHECK_THROWS_AS(ParamTensor(1, 1, kMaxMixtures + 1, 1), Error);
  CHECK_THROWS_AS(ParamTensor(1, 1, 1, 2), Error);
}
