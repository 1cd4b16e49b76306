// Copyright 2026 The dotbounds Authors
// SPDX-License-Identifier: Apache-2.0
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

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "dotbounds/bounds.hpp"
#include "dotbounds/generators.hpp"
#include "oracles.hpp"

namespace dotbounds {
namespace {

using oracle::Quad;

const UnitRoundoff kU32 = UnitRoundoff::binary32();
const FailureProbability kDelta16(1e-16);
// delta = 2/e^2 makes ln(2/delta) = 2 and the concentration factor 2.
const FailureProbability kDeltaE2(2.0 / std::exp(2.0));

std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

VectorPair mixed(std::size_t n, std::uint64_t seed) {
  return generate(Family::MixedSign, n, seed);
}

void expect_rel_near(double a, double b, double tol) {
  EXPECT_LE(std::fabs(a - b), tol * std::fabs(b)) << a << " vs " << b;
}

TEST(Gamma, SmallK) {
  const double u = kU32.value();
  EXPECT_EQ(gamma(1, kU32), u);
  expect_rel_near(gamma(2, kU32), 2 * u + u * u, 1e-15);
}

TEST(Gamma, MatchesBinomialOracle) {
  const double u = kU32.value();
  for (std::size_t k : {64u, 100u, 1000u, 76u, 1u << 20}) {
    const double ref = double(oracle::gamma_binomial(k, u));
    EXPECT_LE(oracle::ulps_between(gamma(k, kU32), ref), 4.0) << "k=" << k;
  }
  const double ref64 = std::expm1(64.0 * std::log1p(u));
  EXPECT_LE(oracle::ulps_between(gamma(64, kU32), ref64), 4.0);
}

TEST(Gamma, RejectsZero) { EXPECT_THROW(gamma(0, kU32), InvalidArgument); }

TEST(Gamma, StrictlyIncreasing) {
  for (std::size_t k = 1; k < 2000; ++k) {
    ASSERT_LT(gamma(k, kU32), gamma(k + 1, kU32));
  }
  EXPECT_LT(gamma(10, UnitRoundoff::binary64()), gamma(10, kU32));
}

TEST(GammaClassic, DominatesGamma) {
  const double u = kU32.value();
  EXPECT_EQ(gamma_classic_bound(1, kU32), u / (1 - u));
  EXPECT_GE(gamma_classic_bound(1, kU32), gamma(1, kU32));
  const Quad ku = Quad(100.0) * Quad(u);
  const double classic = double(ku / (Quad(1) - ku));
  EXPECT_GE(gamma_classic_bound(100, kU32), double(oracle::gamma_binomial(100, u)));
  expect_rel_near(gamma_classic_bound(100, kU32), classic, 1e-15);
  EXPECT_THROW(gamma_classic_bound(1u << 24, kU32), InvalidArgument);
  EXPECT_THROW(gamma_classic_bound(4, UnitRoundoff(0.25)), InvalidArgument);
}

TEST(GeometricSum, MatchesDirectSum) {
  for (std::size_t n : {1u, 2u, 10u, 999u, 10000u}) {
    Quad direct = 0;
    Quad pw = 1;
    for (std::size_t k = 0; k < n; ++k) {
      direct += pw;
      pw *= (Quad(1) + Quad(kU32.value())) * (Quad(1) + Quad(kU32.value()));
    }
    EXPECT_LE(oracle::ulps_between(geometric_power_sum(n, kU32), double(direct)), 4.0)
        << "n=" << n;
  }
}

TEST(Amplifier, SingleTerm) {
  const std::vector<double> one{1.0};
  EXPECT_EQ(amplifier(Norm::One, one, one), 1.0);
  EXPECT_EQ(amplifier(Norm::Two, one, one), 1.0);
  EXPECT_EQ(amplifier(Norm::Inf, one, one), 1.0);
}

TEST(Amplifier, EqualProducts) {
  for (std::size_t n : {1u, 7u, 1000u}) {
    const auto x = ones(n);
    const std::vector<double> y(n, 0.75);
    const auto s = ProductSummary::of(x, y);
    expect_rel_near(amplifier(Norm::Two, s), 1.0, 1e-14);
    const double unscaled = s.l2() / s.denominator();
    expect_rel_near(unscaled * unscaled, 1.0 / double(n), 1e-14);
  }
}

TEST(Amplifier, AlternatingProducts) {
  for (std::size_t n : {1u, 9u, 1001u}) {
    const auto x = ones(n);
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = (k % 2 == 0) ? -0.625 : 0.625;
    const auto s = ProductSummary::of(x, y);
    const double unscaled = s.l2() / s.denominator();
    expect_rel_near(unscaled * unscaled, double(n), 1e-14);
  }
}

TEST(Amplifier, NormOrdering) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto p = mixed(500, seed);
    const auto s = ProductSummary::of(p.x, p.y);
    const double k1 = amplifier(Norm::One, s);
    EXPECT_GE(k1, 1.0);
    EXPECT_LE(k1, amplifier(Norm::Two, s) * (1 + 1e-14));
    EXPECT_LE(amplifier(Norm::Two, s), amplifier(Norm::Inf, s) * (1 + 1e-14));
  }
}

TEST(Amplifier, ZeroInnerProduct) {
  const std::vector<double> x{1.0, 1.0};
  const std::vector<double> y{1.0, -1.0};
  EXPECT_THROW(amplifier(Norm::One, x, y), ZeroInnerProduct);
  EXPECT_THROW(det_roundoff_trad(x, y, kU32), ZeroInnerProduct);
  EXPECT_THROW(prob_roundoff_martingale(x, y, kU32, kDelta16), ZeroInnerProduct);
  EXPECT_THROW(simplest_prob_bound(x, y, kU32, kDelta16), ZeroInnerProduct);
  EXPECT_THROW(compact_upper(x, y, kU32, Norm::One, std::nullopt), ZeroInnerProduct);
}

TEST(Amplifier, LengthMismatch) {
  const std::vector<double> x{1.0, 2.0};
  const std::vector<double> y{1.0};
  EXPECT_THROW(amplifier(Norm::One, x, y), LengthMismatch);
  EXPECT_THROW(ProductSummary::of(std::vector<double>{}, std::vector<double>{}),
               InvalidArgument);
}

TEST(FailureProbability, Factor) {
  EXPECT_GE(kDelta16.factor(), 8.6);
  EXPECT_LE(kDelta16.factor(), 8.7);
  expect_rel_near(kDeltaE2.factor(), 2.0, 1e-15);
  EXPECT_THROW(FailureProbability(0.0), InvalidArgument);
  EXPECT_THROW(FailureProbability(1.0), InvalidArgument);
  EXPECT_THROW(UnitRoundoff(0.0), InvalidArgument);
  EXPECT_THROW(UnitRoundoff(1.0), InvalidArgument);
}

TEST(DetPerturbation, SingleTerm) {
  const std::vector<double> x{3.0};
  const std::vector<double> y{-0.5};
  const double u = kU32.value();
  EXPECT_EQ(det_perturbation_bound(x, y, kU32, Norm::One), u * (2 + u));
}

TEST(DetPerturbation, TwoNormForm) {
  const auto p = mixed(300, 4);
  const auto s = ProductSummary::of(p.x, p.y);
  const double u = kU32.value();
  expect_rel_near(det_perturbation_bound(s, kU32, Norm::Two),
                  std::sqrt(300.0) * s.l2() / s.denominator() * u * (2 + u), 1e-14);
}

TEST(DetPerturbation, ExhaustiveN3) {
  // All delta, theta in {-u, 0, u}^3.
  const double u = kU32.value();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto p = mixed(3, seed);
    const Quad exact = oracle::quad_dot(p.x, p.y);
    const double b1 = det_perturbation_bound(p.x, p.y, kU32, Norm::One);
    const double b2 = det_perturbation_bound(p.x, p.y, kU32, Norm::Two);
    const double binf = det_perturbation_bound(p.x, p.y, kU32, Norm::Inf);
    double worst = 0.0;
    oracle::for_each_pattern(6, u, [&](std::span<const Quad> d) {
      Quad s = 0;
      for (std::size_t k = 0; k < 3; ++k) {
        s += Quad(p.x[k]) * (Quad(1) + d[k]) * Quad(p.y[k]) * (Quad(1) + d[k + 3]);
      }
      worst = std::max(worst, double(oracle::qabs((s - exact) / exact)));
    });
    EXPECT_LE(worst, b1);
    EXPECT_LE(worst, b2);
    EXPECT_LE(worst, binf);
  }
}

TEST(ProbPerturbation, Form) {
  const auto p = mixed(1000, 2);
  const auto s = ProductSummary::of(p.x, p.y);
  const double u = kU32.value();
  expect_rel_near(prob_perturbation_bound(s, kU32, kDelta16),
                  s.l2() / s.denominator() * kDelta16.factor() * u * (2 + u), 1e-14);
}

TEST(CoeffsIndep, SmallN) {
  const double u = kU32.value();
  const std::vector<double> x1{2.0};
  const std::vector<double> y1{-3.0};
  const auto c1 = coeffs_indep(x1, y1, kU32);
  ASSERT_EQ(c1.size(), 1u);
  EXPECT_EQ(c1.coeffs()[0], 6.0 * u);
  EXPECT_EQ(c1.model(), CoefficientModel::Independent);

  const std::vector<double> x2{2.0, 0.5};
  const std::vector<double> y2{-3.0, 4.0};
  const auto c2 = coeffs_indep(x2, y2, kU32);
  ASSERT_EQ(c2.size(), 2u);
  expect_rel_near(c2.coeffs()[0], 6.0 * gamma(2, kU32), 1e-15);
  expect_rel_near(c2.coeffs()[1], 2.0 * gamma(2, kU32), 1e-15);
}

TEST(CoeffsIndep, MatchesLiteral) {
  const auto p = mixed(200, 9);
  const auto c = coeffs_indep(p.x, p.y, kU32);
  const auto ref = oracle::indep_coeffs_literal(p.x, p.y, kU32.value());
  ASSERT_EQ(c.size(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    expect_rel_near(c.coeffs()[i], double(ref[i]), 1e-13);
  }
}

TEST(CoeffsIndep, HolderStep) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto p = mixed(100, seed);
    const auto c = coeffs_indep(p.x, p.y, kU32);
    const double sum = std::accumulate(c.coeffs().begin(), c.coeffs().end(), 0.0);
    const auto s = ProductSummary::of(p.x, p.y);
    EXPECT_LE(sum, s.l1() * gamma(100, kU32));
  }
}

TEST(CoeffsMartingale, SmallN) {
  const double u = kU32.value();
  const std::vector<double> x1{-1.5};
  const std::vector<double> y1{2.0};
  const auto c1 = coeffs_martingale(x1, y1, kU32);
  ASSERT_EQ(c1.size(), 1u);
  EXPECT_EQ(c1.coeffs()[0], 3.0);

  const std::vector<double> x2{-1.5, 0.25};
  const std::vector<double> y2{2.0, -2.0};
  const auto c2 = coeffs_martingale(x2, y2, kU32);
  ASSERT_EQ(c2.size(), 3u);
  EXPECT_EQ(c2.coeffs()[0], 3.0);
  EXPECT_EQ(c2.coeffs()[1], 0.5);
  expect_rel_near(c2.coeffs()[2], 3.0 * (1 + u) + 0.5 * (1 + u), 1e-15);
  EXPECT_EQ(c2.model(), CoefficientModel::Martingale);
}

TEST(CoeffsMartingale, MatchesLiteral) {
  for (std::size_t n : {1u, 2u, 17u, 1000u}) {
    const auto p = mixed(n, 3);
    const auto c = coeffs_martingale(p.x, p.y, kU32);
    const auto ref = oracle::martingale_coeffs_literal(p.x, p.y, kU32.value());
    ASSERT_EQ(c.size(), 2 * n - 1);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      expect_rel_near(c.coeffs()[i], double(ref[i]), 1e-12);
    }
  }
}

TEST(CoefficientVector, RejectsNegative) {
  EXPECT_THROW(CoefficientVector(CoefficientModel::Independent, {1.0, -1.0}, 0.1),
               InvalidArgument);
}

TEST(AzumaTail, Examples) {
  expect_rel_near(azuma_tail(std::vector<double>{1.0}, kDeltaE2), 2.0, 1e-15);
  expect_rel_near(azuma_tail(std::vector<double>{3.0, 4.0}, kDeltaE2), 10.0, 1e-15);
  EXPECT_THROW(azuma_tail(std::vector<double>{}, kDeltaE2), InvalidArgument);
}

TEST(RoundoffBounds, SingleTerm) {
  const std::vector<double> x{1.25};
  const std::vector<double> y{-4.0};
  const double u = kU32.value();
  EXPECT_EQ(det_roundoff_trad(x, y, kU32), u);
  expect_rel_near(det_roundoff_indep(x, y, kU32), u, 1e-15);
  expect_rel_near(det_roundoff_martingale(x, y, kU32), u, 1e-15);
  expect_rel_near(prob_roundoff_indep(x, y, kU32, kDeltaE2), 2 * u, 1e-15);
  expect_rel_near(prob_roundoff_martingale(x, y, kU32, kDeltaE2), 2 * u, 1e-15);
  expect_rel_near(compact_upper(x, y, kU32, Norm::One, std::nullopt), u, 1e-15);
}

TEST(RoundoffBounds, TradIsKappaTimesGamma) {
  const auto p = mixed(4000, 5);
  const auto s = ProductSummary::of(p.x, p.y);
  EXPECT_EQ(det_roundoff_trad(s, kU32), amplifier(Norm::One, s) * gamma(4000, kU32));
}

TEST(RoundoffBounds, TradSameSignLarge) {
  const auto p = generate(Family::SameSign, 1000000, 1);
  const double b = det_roundoff_trad(p.x, p.y, kU32);
  expect_rel_near(b, 1e6 * kU32.value(), 0.1);
}

TEST(RoundoffBounds, MatchLiteralCoefficients) {
  const auto p = mixed(300, 12);
  const double u = kU32.value();
  const Quad exact = oracle::qabs(oracle::quad_dot(p.x, p.y));
  const double ssi = double(oracle::sum_squares(oracle::indep_coeffs_literal(p.x, p.y, u)));
  const double ssm =
      double(oracle::sum_squares(oracle::martingale_coeffs_literal(p.x, p.y, u)));
  const double den = double(exact);
  expect_rel_near(det_roundoff_indep(p.x, p.y, kU32), std::sqrt(300.0 * ssi) / den, 1e-12);
  expect_rel_near(prob_roundoff_indep(p.x, p.y, kU32, kDelta16),
                  std::sqrt(ssi) / den * kDelta16.factor(), 1e-12);
  expect_rel_near(det_roundoff_martingale(p.x, p.y, kU32),
                  std::sqrt(599.0 * ssm) / den * u, 1e-12);
  expect_rel_near(prob_roundoff_martingale(p.x, p.y, kU32, kDelta16),
                  std::sqrt(ssm) / den * kDelta16.factor() * u, 1e-12);
}

TEST(CompactUpper, OneNormIntermediate) {
  const std::size_t n = 1000;
  const auto p = mixed(n, 21);
  const double u = kU32.value();
  const auto a = oracle::abs_products(p.x, p.y);
  Quad l2sq = 0, prefix = 0, rhs = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    l2sq += a[k - 1] * a[k - 1];
    prefix += a[k - 1];
    if (k >= 2) {
      const Quad lead = oracle::one_plus_u_pow(k - 1, u);
      rhs += prefix * prefix * lead * lead;
    }
  }
  const double expected = double(l2sq + rhs);
  const auto s = ProductSummary::of(p.x, p.y);
  expect_rel_near(compact_sum_of_squares(s, kU32, Norm::One), expected, 1e-12);

  // The next step of the derivation replaces every prefix by the full sum.
  const double relaxed = double(prefix * prefix) * geometric_power_sum(n, kU32);
  EXPECT_LE(compact_sum_of_squares(s, kU32, Norm::One), relaxed);
}

TEST(CompactUpper, TwoAndInfNormsMatchLiteral) {
  const std::size_t n = 400;
  const auto p = mixed(n, 22);
  const double u = kU32.value();
  const auto a = oracle::abs_products(p.x, p.y);
  Quad l2sq = 0, pre_sq = 0, pre_max = 0, two = 0, inf = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    l2sq += a[k - 1] * a[k - 1];
    pre_sq += a[k - 1] * a[k - 1];
    if (a[k - 1] > pre_max) pre_max = a[k - 1];
    if (k < 2) continue;
    // u_k = ((1+u)^{k-1}, (1+u)^{k-1}, ..., (1+u))
    Quad uk2 = 0, uk1 = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      const Quad e = oracle::one_plus_u_pow(i == 1 ? k - 1 : k - i + 1, u);
      uk2 += e * e;
      uk1 += e;
    }
    two += pre_sq * uk2;
    inf += pre_max * pre_max * uk1 * uk1;
  }
  const auto s = ProductSummary::of(p.x, p.y);
  expect_rel_near(compact_sum_of_squares(s, kU32, Norm::Two), double(l2sq + two), 1e-12);
  expect_rel_near(compact_sum_of_squares(s, kU32, Norm::Inf), double(l2sq + inf), 1e-12);
}

TEST(CompactUpper, DominatesExactCoefficients) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (std::size_t n : {2u, 50u, 3000u}) {
      const auto p = mixed(n, seed);
      const auto s = ProductSummary::of(p.x, p.y);
      const double det = det_roundoff_martingale(s, kU32);
      const double prob = prob_roundoff_martingale(s, kU32, kDelta16);
      for (Norm q : {Norm::One, Norm::Two, Norm::Inf}) {
        EXPECT_GE(compact_upper(s, kU32, q, kDelta16), prob * (1 - 1e-12));
        EXPECT_GE(compact_upper(s, kU32, q, std::nullopt), det * (1 - 1e-12));
      }
    }
  }
}

TEST(SimplestProb, Form) {
  const auto p = mixed(777, 2);
  const auto s = ProductSummary::of(p.x, p.y);
  const double u = kU32.value();
  expect_rel_near(simplest_prob_bound(s, kU32, kDelta16),
                  amplifier(Norm::One, s) * kDelta16.factor() *
                      std::sqrt(u * gamma(2 * 777, kU32) / 2),
                  1e-14);
}

TEST(SimplestProb, WilkinsonRatio) {
  const auto p = generate(Family::SameSign, 1000000, 3);
  const auto s = ProductSummary::of(p.x, p.y);
  const double ratio = simplest_prob_bound(s, kU32, kDelta16) / det_roundoff_trad(s, kU32);
  expect_rel_near(ratio, kDelta16.factor() / 1000.0, 0.05);
}

TEST(SimplestProb, GammaExceedsRootTerm) {
  const double u = kU32.value();
  for (std::size_t n = 2; n <= 10000; ++n) {
    ASSERT_GT(gamma(n, kU32), std::sqrt(u * gamma(2 * n, kU32) / 2)) << n;
  }
}

TEST(Properties, RatioIdentities) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const std::size_t n = 1 + (seed * 7919) % 5000;
    const auto p = mixed(n, seed);
    const auto s = ProductSummary::of(p.x, p.y);
    const double rn = std::sqrt(double(n)) / kDelta16.factor();
    expect_rel_near(det_perturbation_bound(s, kU32, Norm::Two) /
                        prob_perturbation_bound(s, kU32, kDelta16),
                    rn, 1e-12);
    expect_rel_near(det_roundoff_indep(s, kU32) / prob_roundoff_indep(s, kU32, kDelta16), rn,
                    1e-12);
    expect_rel_near(det_roundoff_martingale(s, kU32) /
                        prob_roundoff_martingale(s, kU32, kDelta16),
                    std::sqrt(2.0 * double(n) - 1.0) / kDelta16.factor(), 1e-12);
  }
}

TEST(Properties, CrossoverDimensions) {
  const auto big = mixed(200, 1);
  for (std::size_t n = 1; n <= 200; ++n) {
    const std::span<const double> x(big.x.data(), n), y(big.y.data(), n);
    if (exact_inner_product(x, y) == 0.0) continue;
    const auto s = ProductSummary::of(x, y);
    const bool pert = prob_perturbation_bound(s, kU32, kDelta16) <
                      det_perturbation_bound(s, kU32, Norm::Two);
    const bool indep =
        prob_roundoff_indep(s, kU32, kDelta16) < det_roundoff_indep(s, kU32);
    const bool mart =
        prob_roundoff_martingale(s, kU32, kDelta16) < det_roundoff_martingale(s, kU32);
    EXPECT_EQ(pert, n >= 76) << n;
    EXPECT_EQ(indep, n >= 76) << n;
    EXPECT_EQ(mart, n >= 39) << n;
  }
}

TEST(Properties, DominanceChain) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (std::size_t n : {1u, 3u, 100u, 5000u}) {
      for (Family f : {Family::MixedSign, Family::SameSign}) {
        const auto p = generate(f, n, seed);
        const auto s = ProductSummary::of(p.x, p.y);
        const double mart = prob_roundoff_martingale(s, kU32, kDelta16);
        const double comp = compact_upper(s, kU32, Norm::One, kDelta16);
        const double simple = simplest_prob_bound(s, kU32, kDelta16);
        EXPECT_LE(mart, comp * (1 + 1e-12));
        EXPECT_LE(comp, simple * (1 + 1e-12));
      }
    }
  }
}

TEST(Properties, ScaleInvariance) {
  const auto p = mixed(2000, 8);
  const auto base = evaluate_bounds(ProductSummary::of(p.x, p.y), kU32, kDelta16);
  for (auto [a, b] : {std::pair{-3.5, 0.001}, std::pair{1e10, -7.25}, std::pair{0.1, 0.3}}) {
    auto x = p.x;
    auto y = p.y;
    for (auto& v : x) v *= a;
    for (auto& v : y) v *= b;
    const auto r = evaluate_bounds(ProductSummary::of(x, y), kU32, kDelta16);
    for (std::size_t i = 0; i < kBoundCount; ++i) {
      expect_rel_near(r.value(BoundId(i)), base.value(BoundId(i)), 1e-12);
    }
    expect_rel_near(r.kappa1, base.kappa1, 1e-12);
    expect_rel_near(r.kappa2, base.kappa2, 1e-12);
    expect_rel_near(r.kappa_inf, base.kappa_inf, 1e-12);
  }
}

TEST(Properties, PermutationSensitivity) {
  const auto p = mixed(1000, 13);
  auto x = p.x;
  auto y = p.y;
  std::reverse(x.begin(), x.end());
  std::reverse(y.begin(), y.end());
  const auto s0 = ProductSummary::of(p.x, p.y);
  const auto s1 = ProductSummary::of(x, y);
  for (Norm q : {Norm::One, Norm::Two, Norm::Inf}) {
    expect_rel_near(amplifier(q, s1), amplifier(q, s0), 1e-12);
  }
  expect_rel_near(det_roundoff_trad(s1, kU32), det_roundoff_trad(s0, kU32), 1e-12);
  expect_rel_near(simplest_prob_bound(s1, kU32, kDelta16),
                  simplest_prob_bound(s0, kU32, kDelta16), 1e-12);

  const auto ci0 = coeffs_indep(s0, kU32);
  const auto ci1 = coeffs_indep(s1, kU32);
  EXPECT_FALSE(std::equal(ci0.coeffs().begin(), ci0.coeffs().end(), ci1.coeffs().begin()));
  const auto cm0 = coeffs_martingale(s0, kU32);
  const auto cm1 = coeffs_martingale(s1, kU32);
  EXPECT_FALSE(std::equal(cm0.coeffs().begin(), cm0.coeffs().end(), cm1.coeffs().begin()));
}

TEST(Properties, BruteForceMartingaleDominance) {
  const double u = kU32.value();
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto p = mixed(n, seed);
      const Quad exact = oracle::quad_dot(p.x, p.y);
      const double det = det_roundoff_martingale(p.x, p.y, kU32);
      const double trad = det_roundoff_trad(p.x, p.y, kU32);
      double worst = 0.0;
      oracle::for_each_pattern(2 * n - 1, u, [&](std::span<const Quad> d) {
        const Quad r = oracle::model_result(p.x, p.y, d);
        worst = std::max(worst, double(oracle::qabs((r - exact) / exact)));
      });
      EXPECT_LE(worst, det) << "n=" << n << " seed=" << seed;
      EXPECT_LE(worst, trad) << "n=" << n << " seed=" << seed;
    }
  }
}

TEST(BoundReport, EvaluateAndFlags) {
  const auto p = mixed(100, 1);
  const auto s = ProductSummary::of(p.x, p.y);
  auto r = evaluate_bounds(s, kU32, kDelta16);
  EXPECT_EQ(r.n, 100u);
  EXPECT_EQ(r.value(BoundId::DetTrad), r.det_trad);
  EXPECT_EQ(r.value(BoundId::SimplestProb), r.simplest_prob);
  record_error(r, r.prob_indep * 1.01, ErrorKind::Roundoff);
  EXPECT_TRUE(r.is_violated(BoundId::ProbIndep));
  EXPECT_FALSE(r.is_violated(BoundId::DetTrad));
  EXPECT_FALSE(r.is_violated(BoundId::ProbPerturb));
  EXPECT_TRUE(is_deterministic(BoundId::DetMart));
  EXPECT_FALSE(is_deterministic(BoundId::CompactUpper));
  EXPECT_EQ(to_string(BoundId::ProbMart), "prob_mart");
  EXPECT_EQ(bounds_for(ErrorKind::Perturbation).size(), 2u);
  EXPECT_EQ(bounds_for(ErrorKind::Roundoff).size(), 7u);
  EXPECT_TRUE(bounds_for(ErrorKind::None).empty());
}

}  // namespace
}  // namespace dotbounds
