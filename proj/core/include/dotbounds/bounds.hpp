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

#pragma once

// Closed-form forward-error bounds for inner products x^T y.
//
// All quantities are relative errors (divided by the exact |x^T y|) and are
// evaluated in binary64 irrespective of the simulated working precision.
// The deterministic/probabilistic pairs differ only in the dimension factor
// (sqrt(n) or sqrt(2n-1)) versus sqrt(2 ln(2/delta)).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dotbounds/fpsim.hpp"
#include "dotbounds/types.hpp"

namespace dotbounds {

/// (1 + u)^k - 1, evaluated as expm1(k log1p(u)). Requires k >= 1.
double gamma(std::size_t k, UnitRoundoff u);

/// k u / (1 - k u), an upper bound on gamma(k, u). Requires k u < 1.
double gamma_classic_bound(std::size_t k, UnitRoundoff u);

/// sum_{j=0}^{n-1} (1 + u)^{2j} = gamma(2n, u) / (u^2 + 2u).
double geometric_power_sum(std::size_t n, UnitRoundoff u);

/// Norms of the Hadamard product x o y and the exact inner product, computed
/// once and shared by every bound.
class ProductSummary {
 public:
  /// Throws LengthMismatch, or InvalidArgument for empty input.
  static ProductSummary of(std::span<const double> x, std::span<const double> y,
                           OraclePrecision oracle = OraclePrecision::Binary64);

  std::size_t n() const { return abs_products_.size(); }
  double exact() const { return exact_; }
  double l1() const { return l1_; }        // |x|^T |y|
  double l2() const { return l2_; }        // ||x o y||_2
  double linf() const { return linf_; }    // max |x_k y_k|
  std::span<const double> abs_products() const { return abs_products_; }

  /// |x^T y|; throws ZeroInnerProduct when it vanishes.
  double denominator() const;

 private:
  std::vector<double> abs_products_;
  double exact_ = 0.0;
  double l1_ = 0.0;
  double l2_ = 0.0;
  double linf_ = 0.0;
};

enum class CoefficientModel { Perturbation, Independent, Martingale };

/// Per-term bound coefficients c_k of one error model.
class CoefficientVector {
 public:
  CoefficientVector(CoefficientModel model, std::vector<double> coeffs,
                    double u);

  CoefficientModel model() const { return model_; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  double u() const { return u_; }

  /// Compensated sum of c_k^2.
  double sum_of_squares() const;

 private:
  CoefficientModel model_;
  std::vector<double> coeffs_;
  double u_;
};

/// kappa_1 = ||x o y||_1 / |x^T y|, kappa_2 = sqrt(n) ||x o y||_2 / |x^T y|,
/// kappa_inf = n ||x o y||_inf / |x^T y|.
double amplifier(Norm p, const ProductSummary& s);
double amplifier(Norm p, std::span<const double> x, std::span<const double> y);

/// Hoelder perturbation bound kappa_p u (2 + u) for perturbations |.| <= u.
double det_perturbation_bound(const ProductSummary& s, UnitRoundoff u, Norm p);
double det_perturbation_bound(std::span<const double> x,
                              std::span<const double> y, UnitRoundoff u,
                              Norm p);

/// ||x o y||_2 / |x^T y| sqrt(2 ln(2/delta)) u (2 + u).
double prob_perturbation_bound(const ProductSummary& s, UnitRoundoff u,
                               FailureProbability delta);
double prob_perturbation_bound(std::span<const double> x,
                               std::span<const double> y, UnitRoundoff u,
                               FailureProbability delta);

/// c_k = |x_k y_k| u (2 + u), the local perturbation error bounds.
CoefficientVector coeffs_perturbation(const ProductSummary& s, UnitRoundoff u);

/// c_1 = |x_1 y_1| gamma_n, c_k = |x_k y_k| gamma_{n-k+2} for k >= 2.
CoefficientVector coeffs_indep(const ProductSummary& s, UnitRoundoff u);
CoefficientVector coeffs_indep(std::span<const double> x,
                               std::span<const double> y, UnitRoundoff u);

/// The 2n-1 coefficients bounding the partial-sum increments, in index
/// order: odd c_{2k-1} bound |s-hat_{2k-1}|, even c_{2k-2} = |x_k y_k|.
/// Built by the O(n) recurrence c_{2k+1} = (c_{2k-1} + |x_{k+1} y_{k+1}|)(1+u).
CoefficientVector coeffs_martingale(const ProductSummary& s, UnitRoundoff u);
CoefficientVector coeffs_martingale(std::span<const double> x,
                                    std::span<const double> y, UnitRoundoff u);

/// sqrt(sum c_k^2) sqrt(2 ln(2/delta)). Throws InvalidArgument when empty.
double azuma_tail(const CoefficientVector& coeffs, FailureProbability delta);
double azuma_tail(std::span<const double> coeffs, FailureProbability delta);

/// kappa_1 gamma_n.
double det_roundoff_trad(const ProductSummary& s, UnitRoundoff u);
double det_roundoff_trad(std::span<const double> x, std::span<const double> y,
                         UnitRoundoff u);

double det_roundoff_indep(const ProductSummary& s, UnitRoundoff u);
double det_roundoff_indep(std::span<const double> x, std::span<const double> y,
                          UnitRoundoff u);

double prob_roundoff_indep(const ProductSummary& s, UnitRoundoff u,
                           FailureProbability delta);
double prob_roundoff_indep(std::span<const double> x, std::span<const double> y,
                           UnitRoundoff u, FailureProbability delta);

double det_roundoff_martingale(const ProductSummary& s, UnitRoundoff u);
double det_roundoff_martingale(std::span<const double> x,
                               std::span<const double> y, UnitRoundoff u);

double prob_roundoff_martingale(const ProductSummary& s, UnitRoundoff u,
                                FailureProbability delta);
double prob_roundoff_martingale(std::span<const double> x,
                                std::span<const double> y, UnitRoundoff u,
                                FailureProbability delta);

/// The martingale bound with sum c_k^2 relaxed to
/// ||x o y||_2^2 + sum_{k=2}^n ||(x o y)_k||_p^2 ||u_k||_q^2.
/// Probabilistic when delta is given, deterministic otherwise.
double compact_upper(const ProductSummary& s, UnitRoundoff u, Norm p,
                     std::optional<FailureProbability> delta);
double compact_upper(std::span<const double> x, std::span<const double> y,
                     UnitRoundoff u, Norm p,
                     std::optional<FailureProbability> delta);

/// The relaxed sum of squares inside compact_upper.
double compact_sum_of_squares(const ProductSummary& s, UnitRoundoff u, Norm p);

/// kappa_1 sqrt(2 ln(2/delta)) sqrt(u gamma_{2n} / 2).
double simplest_prob_bound(const ProductSummary& s, UnitRoundoff u,
                           FailureProbability delta);
double simplest_prob_bound(std::span<const double> x,
                           std::span<const double> y, UnitRoundoff u,
                           FailureProbability delta);

enum class BoundId : std::uint8_t {
  DetPerturb,
  ProbPerturb,
  DetTrad,
  DetIndep,
  ProbIndep,
  DetMart,
  ProbMart,
  CompactUpper,
  SimplestProb,
};
inline constexpr std::size_t kBoundCount = 9;

std::string_view to_string(BoundId id);
bool is_deterministic(BoundId id);

/// Which error the empirical value measures, and so which bounds apply.
enum class ErrorKind { None, Perturbation, Roundoff };

/// Every bound and amplifier for one instance.
struct BoundReport {
  std::size_t n = 0;
  double exact = 0.0;
  double empirical_rel_error = 0.0;
  ErrorKind error_kind = ErrorKind::None;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double kappa_inf = 0.0;
  double det_perturb_p2 = 0.0;
  double prob_perturb = 0.0;
  double det_trad = 0.0;
  double det_indep = 0.0;
  double prob_indep = 0.0;
  double det_martingale = 0.0;
  double prob_martingale = 0.0;
  double compact_upper = 0.0;  // probabilistic, p = 1
  double simplest_prob = 0.0;
  std::uint16_t violated = 0;  // bit i set when bound BoundId(i) < error

  double value(BoundId id) const;
  bool is_violated(BoundId id) const {
    return (violated >> static_cast<unsigned>(id)) & 1u;
  }
};

/// Evaluates every bound; the empirical error is left at zero and no bound
/// is flagged.
BoundReport evaluate_bounds(const ProductSummary& s, UnitRoundoff u,
                            FailureProbability delta);

/// Relative slack on every violation test, covering the rounding of the
/// bound evaluation and of the empirical error itself.
inline constexpr double kViolationRelTol = 1e-12;

/// Records the empirical error and flags each applicable bound it exceeds,
/// i.e. error > bound (1 + kViolationRelTol).
void record_error(BoundReport& report, double empirical_rel_error,
                  ErrorKind kind);

/// Bounds that apply to an error kind.
std::span<const BoundId> bounds_for(ErrorKind kind);

}  // namespace dotbounds
