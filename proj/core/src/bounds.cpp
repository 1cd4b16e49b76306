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

#include "dotbounds/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "dotbounds/eft.hpp"

namespace dotbounds {
namespace {

double one_plus_u_pow(std::size_t k, double log1p_u) {
  return 1.0 + std::expm1(static_cast<double>(k) * log1p_u);
}

double gamma_from_log(std::size_t k, double log1p_u) {
  return std::expm1(static_cast<double>(k) * log1p_u);
}

double perturbation_tau(UnitRoundoff u) {
  return u.value() * (2.0 + u.value());
}

// sum_k (|x_k y_k| gamma_{m_k})^2 with m_1 = n, m_k = n - k + 2.
double indep_sum_of_squares(std::span<const double> p, UnitRoundoff u) {
  const std::size_t n = p.size();
  const double l = std::log1p(u.value());
  CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = (i == 0) ? n : n - i + 1;
    const double c = p[i] * gamma_from_log(m, l);
    acc += c * c;
  }
  return acc.value();
}

// Streams the martingale coefficients without materializing 2n-1 values.
template <typename Visit>
void for_each_martingale_coeff(std::span<const double> p, UnitRoundoff u,
                               Visit&& visit) {
  const double uu = u.value();
  double odd = p[0];
  visit(odd);
  for (std::size_t k = 1; k < p.size(); ++k) {
    visit(p[k]);
    const double t = odd + p[k];
    odd = t + t * uu;
    visit(odd);
  }
}

double martingale_sum_of_squares(std::span<const double> p, UnitRoundoff u) {
  CompensatedSum acc;
  for_each_martingale_coeff(p, u, [&](double c) { acc += c * c; });
  return acc.value();
}

}  // namespace

double gamma(std::size_t k, UnitRoundoff u) {
  if (k == 0) throw InvalidArgument("gamma requires k >= 1");
  return gamma_from_log(k, std::log1p(u.value()));
}

double gamma_classic_bound(std::size_t k, UnitRoundoff u) {
  if (k == 0) throw InvalidArgument("gamma requires k >= 1");
  const double ku = static_cast<double>(k) * u.value();
  if (!(ku < 1.0)) {
    throw InvalidArgument("k*u/(1-k*u) requires k*u < 1");
  }
  return ku / (1.0 - ku);
}

double geometric_power_sum(std::size_t n, UnitRoundoff u) {
  const double uu = u.value();
  return gamma(2 * n, u) / (uu * uu + 2.0 * uu);
}

ProductSummary ProductSummary::of(std::span<const double> x,
                                  std::span<const double> y,
                                  OraclePrecision oracle) {
  if (x.size() != y.size()) throw LengthMismatch(x.size(), y.size());
  if (x.empty()) throw InvalidArgument("vectors must be non-empty");
  ProductSummary s;
  s.abs_products_.resize(x.size());
  CompensatedSum l1;
  CompensatedSum sq;
  double linf = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::fabs(x[i] * y[i]);
    s.abs_products_[i] = a;
    l1 += a;
    sq += a * a;
    linf = std::max(linf, a);
  }
  s.exact_ = exact_inner_product(x, y, oracle);
  s.l1_ = l1.value();
  s.l2_ = std::sqrt(sq.value());
  s.linf_ = linf;
  return s;
}

double ProductSummary::denominator() const {
  if (exact_ == 0.0) throw ZeroInnerProduct();
  return std::fabs(exact_);
}

CoefficientVector::CoefficientVector(CoefficientModel model,
                                     std::vector<double> coeffs, double u)
    : model_(model), coeffs_(std::move(coeffs)), u_(u) {
  for (double c : coeffs_) {
    if (!(c >= 0.0)) throw InvalidArgument("coefficients must be >= 0");
  }
}

double CoefficientVector::sum_of_squares() const {
  CompensatedSum acc;
  for (double c : coeffs_) acc += c * c;
  return acc.value();
}

double amplifier(Norm p, const ProductSummary& s) {
  const double den = s.denominator();
  const double n = static_cast<double>(s.n());
  switch (p) {
    case Norm::One:
      return s.l1() / den;
    case Norm::Two:
      return std::sqrt(n) * s.l2() / den;
    case Norm::Inf:
      return n * s.linf() / den;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double amplifier(Norm p, std::span<const double> x, std::span<const double> y) {
  return amplifier(p, ProductSummary::of(x, y));
}

double det_perturbation_bound(const ProductSummary& s, UnitRoundoff u, Norm p) {
  return amplifier(p, s) * perturbation_tau(u);
}

double det_perturbation_bound(std::span<const double> x,
                              std::span<const double> y, UnitRoundoff u,
                              Norm p) {
  return det_perturbation_bound(ProductSummary::of(x, y), u, p);
}

double prob_perturbation_bound(const ProductSummary& s, UnitRoundoff u,
                               FailureProbability delta) {
  return s.l2() / s.denominator() * delta.factor() * perturbation_tau(u);
}

double prob_perturbation_bound(std::span<const double> x,
                               std::span<const double> y, UnitRoundoff u,
                               FailureProbability delta) {
  return prob_perturbation_bound(ProductSummary::of(x, y), u, delta);
}

CoefficientVector coeffs_perturbation(const ProductSummary& s, UnitRoundoff u) {
  const double tau = perturbation_tau(u);
  std::vector<double> c(s.abs_products().begin(), s.abs_products().end());
  for (double& v : c) v *= tau;
  return {CoefficientModel::Perturbation, std::move(c), u.value()};
}

CoefficientVector coeffs_indep(const ProductSummary& s, UnitRoundoff u) {
  const auto p = s.abs_products();
  const std::size_t n = p.size();
  const double l = std::log1p(u.value());
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = (i == 0) ? n : n - i + 1;
    c[i] = p[i] * gamma_from_log(m, l);
  }
  return {CoefficientModel::Independent, std::move(c), u.value()};
}

CoefficientVector coeffs_indep(std::span<const double> x,
                               std::span<const double> y, UnitRoundoff u) {
  return coeffs_indep(ProductSummary::of(x, y), u);
}

CoefficientVector coeffs_martingale(const ProductSummary& s, UnitRoundoff u) {
  std::vector<double> c;
  c.reserve(2 * s.n() - 1);
  for_each_martingale_coeff(s.abs_products(), u,
                            [&](double v) { c.push_back(v); });
  return {CoefficientModel::Martingale, std::move(c), u.value()};
}

CoefficientVector coeffs_martingale(std::span<const double> x,
                                    std::span<const double> y, UnitRoundoff u) {
  return coeffs_martingale(ProductSummary::of(x, y), u);
}

double azuma_tail(std::span<const double> coeffs, FailureProbability delta) {
  if (coeffs.empty()) throw InvalidArgument("azuma_tail needs coefficients");
  CompensatedSum acc;
  for (double c : coeffs) acc += c * c;
  return std::sqrt(acc.value()) * delta.factor();
}

double azuma_tail(const CoefficientVector& coeffs, FailureProbability delta) {
  return azuma_tail(coeffs.coeffs(), delta);
}

double det_roundoff_trad(const ProductSummary& s, UnitRoundoff u) {
  return amplifier(Norm::One, s) * gamma(s.n(), u);
}

double det_roundoff_trad(std::span<const double> x, std::span<const double> y,
                         UnitRoundoff u) {
  return det_roundoff_trad(ProductSummary::of(x, y), u);
}

double det_roundoff_indep(const ProductSummary& s, UnitRoundoff u) {
  const double den = s.denominator();
  return std::sqrt(static_cast<double>(s.n())) *
         std::sqrt(indep_sum_of_squares(s.abs_products(), u)) / den;
}

double det_roundoff_indep(std::span<const double> x, std::span<const double> y,
                          UnitRoundoff u) {
  return det_roundoff_indep(ProductSummary::of(x, y), u);
}

double prob_roundoff_indep(const ProductSummary& s, UnitRoundoff u,
                           FailureProbability delta) {
  const double den = s.denominator();
  return std::sqrt(indep_sum_of_squares(s.abs_products(), u)) / den *
         delta.factor();
}

double prob_roundoff_indep(std::span<const double> x, std::span<const double> y,
                           UnitRoundoff u, FailureProbability delta) {
  return prob_roundoff_indep(ProductSummary::of(x, y), u, delta);
}

double det_roundoff_martingale(const ProductSummary& s, UnitRoundoff u) {
  const double den = s.denominator();
  const double terms = static_cast<double>(2 * s.n() - 1);
  return std::sqrt(terms) *
         std::sqrt(martingale_sum_of_squares(s.abs_products(), u)) / den *
         u.value();
}

double det_roundoff_martingale(std::span<const double> x,
                               std::span<const double> y, UnitRoundoff u) {
  return det_roundoff_martingale(ProductSummary::of(x, y), u);
}

double prob_roundoff_martingale(const ProductSummary& s, UnitRoundoff u,
                                FailureProbability delta) {
  const double den = s.denominator();
  return std::sqrt(martingale_sum_of_squares(s.abs_products(), u)) / den *
         delta.factor() * u.value();
}

double prob_roundoff_martingale(std::span<const double> x,
                                std::span<const double> y, UnitRoundoff u,
                                FailureProbability delta) {
  return prob_roundoff_martingale(ProductSummary::of(x, y), u, delta);
}

double compact_sum_of_squares(const ProductSummary& s, UnitRoundoff u, Norm p) {
  const auto prod = s.abs_products();
  const std::size_t n = prod.size();
  const double uu = u.value();
  const double l = std::log1p(uu);
  const double one_plus_u = 1.0 + uu;
  const double two_u_u2 = uu * uu + 2.0 * uu;

  CompensatedSum acc;
  acc += s.l2() * s.l2();

  CompensatedSum prefix_l1;
  CompensatedSum prefix_sq;
  double prefix_max = 0.0;
  prefix_l1 += prod[0];
  prefix_sq += prod[0] * prod[0];
  prefix_max = prod[0];

  for (std::size_t k = 2; k <= n; ++k) {
    const double a = prod[k - 1];
    prefix_l1 += a;
    prefix_sq += a * a;
    prefix_max = std::max(prefix_max, a);

    // u_k = ((1+u)^{k-1}, (1+u)^{k-1}, (1+u)^{k-2}, ..., (1+u)).
    const double lead = one_plus_u_pow(k - 1, l);
    double term = 0.0;
    switch (p) {
      case Norm::One: {
        const double v = prefix_l1.value() * lead;
        term = v * v;
        break;
      }
      case Norm::Two: {
        // sum_{j=1}^{k-1} (1+u)^{2j} = (1+u)^2 gamma_{2(k-1)} / (u^2 + 2u)
        const double tail = one_plus_u * one_plus_u *
                            gamma_from_log(2 * (k - 1), l) / two_u_u2;
        term = prefix_sq.value() * (lead * lead + tail);
        break;
      }
      case Norm::Inf: {
        // sum_{j=1}^{k-1} (1+u)^j = (1+u) gamma_{k-1} / u
        const double tail = one_plus_u * gamma_from_log(k - 1, l) / uu;
        const double v = prefix_max * (lead + tail);
        term = v * v;
        break;
      }
    }
    acc += term;
  }
  return acc.value();
}

double compact_upper(const ProductSummary& s, UnitRoundoff u, Norm p,
                     std::optional<FailureProbability> delta) {
  const double den = s.denominator();
  const double factor =
      delta ? delta->factor() : std::sqrt(static_cast<double>(2 * s.n() - 1));
  return std::sqrt(compact_sum_of_squares(s, u, p)) / den * factor * u.value();
}

double compact_upper(std::span<const double> x, std::span<const double> y,
                     UnitRoundoff u, Norm p,
                     std::optional<FailureProbability> delta) {
  return compact_upper(ProductSummary::of(x, y), u, p, delta);
}

double simplest_prob_bound(const ProductSummary& s, UnitRoundoff u,
                           FailureProbability delta) {
  return amplifier(Norm::One, s) * delta.factor() *
         std::sqrt(u.value() * gamma(2 * s.n(), u) / 2.0);
}

double simplest_prob_bound(std::span<const double> x,
                           std::span<const double> y, UnitRoundoff u,
                           FailureProbability delta) {
  return simplest_prob_bound(ProductSummary::of(x, y), u, delta);
}

std::string_view to_string(BoundId id) {
  switch (id) {
    case BoundId::DetPerturb: return "det_perturb";
    case BoundId::ProbPerturb: return "prob_perturb";
    case BoundId::DetTrad: return "det_trad";
    case BoundId::DetIndep: return "det_indep";
    case BoundId::ProbIndep: return "prob_indep";
    case BoundId::DetMart: return "det_mart";
    case BoundId::ProbMart: return "prob_mart";
    case BoundId::CompactUpper: return "compact_upper";
    case BoundId::SimplestProb: return "simplest_prob";
  }
  return "unknown";
}

bool is_deterministic(BoundId id) {
  switch (id) {
    case BoundId::DetPerturb:
    case BoundId::DetTrad:
    case BoundId::DetIndep:
    case BoundId::DetMart:
      return true;
    default:
      return false;
  }
}

double BoundReport::value(BoundId id) const {
  switch (id) {
    case BoundId::DetPerturb: return det_perturb_p2;
    case BoundId::ProbPerturb: return prob_perturb;
    case BoundId::DetTrad: return det_trad;
    case BoundId::DetIndep: return det_indep;
    case BoundId::ProbIndep: return prob_indep;
    case BoundId::DetMart: return det_martingale;
    case BoundId::ProbMart: return prob_martingale;
    case BoundId::CompactUpper: return compact_upper;
    case BoundId::SimplestProb: return simplest_prob;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

BoundReport evaluate_bounds(const ProductSummary& s, UnitRoundoff u,
                            FailureProbability delta) {
  const double den = s.denominator();
  const auto p = s.abs_products();
  const double n = static_cast<double>(s.n());
  const double factor = delta.factor();
  const double tau = perturbation_tau(u);

  BoundReport r;
  r.n = s.n();
  r.exact = s.exact();
  r.kappa1 = s.l1() / den;
  r.kappa2 = std::sqrt(n) * s.l2() / den;
  r.kappa_inf = n * s.linf() / den;

  r.det_perturb_p2 = r.kappa2 * tau;
  r.prob_perturb = s.l2() / den * factor * tau;

  r.det_trad = r.kappa1 * gamma(s.n(), u);
  const double indep = std::sqrt(indep_sum_of_squares(p, u)) / den;
  r.det_indep = std::sqrt(n) * indep;
  r.prob_indep = indep * factor;

  const double mart = std::sqrt(martingale_sum_of_squares(p, u)) / den;
  r.det_martingale = std::sqrt(2.0 * n - 1.0) * mart * u.value();
  r.prob_martingale = mart * factor * u.value();

  r.compact_upper = compact_upper(s, u, Norm::One, delta);
  r.simplest_prob = r.kappa1 * factor *
                    std::sqrt(u.value() * gamma(2 * s.n(), u) / 2.0);
  return r;
}

namespace {
constexpr std::array kPerturbationBounds{BoundId::DetPerturb,
                                         BoundId::ProbPerturb};
constexpr std::array kRoundoffBounds{
    BoundId::DetTrad,  BoundId::DetIndep,     BoundId::ProbIndep,
    BoundId::DetMart,  BoundId::ProbMart,     BoundId::CompactUpper,
    BoundId::SimplestProb};
}  // namespace

std::span<const BoundId> bounds_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Perturbation: return kPerturbationBounds;
    case ErrorKind::Roundoff: return kRoundoffBounds;
    case ErrorKind::None: break;
  }
  return {};
}

void record_error(BoundReport& report, double empirical_rel_error,
                  ErrorKind kind) {
  report.empirical_rel_error = empirical_rel_error;
  report.error_kind = kind;
  report.violated = 0;
  for (BoundId id : bounds_for(kind)) {
    if (empirical_rel_error > report.value(id) * (1.0 + kViolationRelTol)) {
      report.violated |= static_cast<std::uint16_t>(1u << static_cast<unsigned>(id));
    }
  }
}

}  // namespace dotbounds
