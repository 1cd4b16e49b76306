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

// Compiled with -ffp-contract=off: every working-precision multiply and add
// below must round separately. working_arithmetic_is_unfused() verifies it.

#include "dotbounds/fpsim.hpp"

#include <cfloat>
#include <cmath>

#include "dotbounds/eft.hpp"
#include "dotbounds/rng.hpp"

static_assert(FLT_EVAL_METHOD == 0,
              "working-precision simulation needs strict IEEE evaluation");

namespace dotbounds {
namespace {

void check_lengths(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw LengthMismatch(x.size(), y.size());
}

// Oracle accumulation as an unevaluated pair, so callers can difference two
// oracle values without cancellation.
DoubleDouble oracle_dot(std::span<const double> x, std::span<const double> y,
                        OraclePrecision oracle) {
  check_lengths(x, y);
  if (oracle == OraclePrecision::Binary64) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc.pair();
  }
  DoubleDouble acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto [p, e] = two_product(x[i], y[i]);
    acc += DoubleDouble(p, e);
  }
  return acc;
}

// Running exact partial sum in the chosen oracle.
class OracleAccumulator {
 public:
  explicit OracleAccumulator(OraclePrecision oracle) : oracle_(oracle) {}

  void add(const DoubleDouble& product) {
    if (oracle_ == OraclePrecision::Binary64) {
      comp_ += product.to_double();
    } else {
      dd_ += product;
    }
  }

  DoubleDouble value() const {
    return oracle_ == OraclePrecision::Binary64 ? comp_.pair() : dd_;
  }

 private:
  OraclePrecision oracle_;
  CompensatedSum comp_;
  DoubleDouble dd_;
};

double relative_roundoff(double residual, double exact_hi, double exact_lo) {
  // computed = exact (1 + delta)  =>  delta = -residual / exact
  const double exact = exact_hi + exact_lo;
  if (exact == 0.0) return 0.0;
  return -residual / exact;
}

template <typename T>
void check_representable(std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    const T t = static_cast<T>(v[i]);
    if (!(static_cast<double>(t) == v[i])) throw InputNotRepresentable(i);
  }
}

template <typename T>
RoundoffTrace accumulate_impl(std::span<const double> x,
                              std::span<const double> y,
                              const PrecisionSpec& prec, TraceMode mode) {
  check_lengths(x, y);
  if (x.empty()) throw InvalidArgument("vectors must be non-empty");
  check_representable<T>(x);
  check_representable<T>(y);

  const std::size_t n = x.size();
  RoundoffTrace t;
  t.n = n;
  t.prec = prec;
  const bool full = mode == TraceMode::Full;
  if (full) {
    t.shat.reserve(2 * n);
    t.s_exact.reserve(2 * n);
    t.deltas.reserve(2 * n - 1);
    t.z.reserve(2 * n);
  }

  OracleAccumulator exact(prec.oracle());
  double max_abs_delta = 0.0;
  auto push = [&](const DoubleDouble& shat, const DoubleDouble& s) {
    t.shat.push_back(shat.to_double());
    t.s_exact.push_back(s.to_double());
    t.z.push_back((shat - s).to_double());
  };
  auto push_delta = [&](double d) {
    max_abs_delta = std::max(max_abs_delta, std::fabs(d));
    if (full) t.deltas.push_back(d);
  };

  T acc{};
  for (std::size_t k = 0; k < n; ++k) {
    const T a = static_cast<T>(x[k]);
    const T b = static_cast<T>(y[k]);
    // Stored product: fl(a*b) = ph, exact a*b = ph + pe.
    const auto [ph, pe] = two_product(a, b);
    const DoubleDouble product(static_cast<double>(ph), static_cast<double>(pe));
    const double delta_mul =
        relative_roundoff(static_cast<double>(pe), product.hi, product.lo);
    exact.add(product);
    const DoubleDouble s = exact.value();

    if (k == 0) {
      // s-hat_1 = x_1 y_1 exactly; s-hat_2 = fl(x_1 y_1).
      acc = ph;
      push_delta(delta_mul);
      if (full) {
        push(product, s);
        push(DoubleDouble(static_cast<double>(acc)), s);
      }
      continue;
    }

    // s-hat_{2k-1} = s-hat_{2k-2} + fl(x_k y_k), exact; s-hat_{2k} its rounding.
    const auto [sum, err] = two_sum(acc, ph);
    const DoubleDouble odd(static_cast<double>(sum), static_cast<double>(err));
    push_delta(delta_mul);
    push_delta(relative_roundoff(static_cast<double>(err), odd.hi, odd.lo));
    acc = sum;
    if (full) {
      push(odd, s);
      push(DoubleDouble(static_cast<double>(acc)), s);
    }
  }

  const DoubleDouble s = exact.value();
  t.result = static_cast<double>(acc);
  t.exact = s.to_double();
  t.error = (DoubleDouble(t.result) - s).to_double();
  t.max_abs_delta = max_abs_delta;
  return t;
}

template <typename T>
LocalErrorResult model1_impl(std::span<const double> x,
                             std::span<const double> y) {
  check_lengths(x, y);
  if (x.empty()) throw InvalidArgument("vectors must be non-empty");
  check_representable<T>(x);
  check_representable<T>(y);

  const std::size_t n = x.size();
  LocalErrorResult r;
  r.thetas.resize(n);
  r.deltas.reserve(n - 1);
  std::vector<double> products(n);

  T acc{};
  for (std::size_t k = 0; k < n; ++k) {
    const auto [ph, pe] =
        two_product(static_cast<T>(x[k]), static_cast<T>(y[k]));
    products[k] = static_cast<double>(ph) + static_cast<double>(pe);
    r.thetas[k] = relative_roundoff(static_cast<double>(pe),
                                    static_cast<double>(ph),
                                    static_cast<double>(pe));
    if (k == 0) {
      acc = ph;
      continue;
    }
    const auto [sum, err] = two_sum(acc, ph);
    r.deltas.push_back(relative_roundoff(static_cast<double>(err),
                                         static_cast<double>(sum),
                                         static_cast<double>(err)));
    acc = sum;
  }
  r.value = static_cast<double>(acc);

  // Z_k = p_k expm1(log1p(theta_k) + sum_{l >= max(k, 2)} log1p(delta_l)).
  // deltas[j] holds delta_{j+2}.
  r.local_errors.resize(n);
  CompensatedSum suffix;
  for (std::size_t k = n; k-- > 0;) {
    if (k >= 1) suffix += std::log1p(r.deltas[k - 1]);
    const double log_factor = std::log1p(r.thetas[k]) + suffix.value();
    r.local_errors[k] = products[k] * std::expm1(log_factor);
  }
  return r;
}

template <typename T>
double plain_dot_impl(std::span<const double> x, std::span<const double> y) {
  check_lengths(x, y);
  T acc{};
  for (std::size_t k = 0; k < x.size(); ++k) {
    const T p = static_cast<T>(x[k]) * static_cast<T>(y[k]);
    acc = (k == 0) ? p : acc + p;
  }
  return static_cast<double>(acc);
}

}  // namespace

double unit_roundoff_of(WorkingPrecision p) {
  return p == WorkingPrecision::Binary32 ? 0x1p-24 : 0x1p-53;
}

double unit_roundoff_of(OraclePrecision p) {
  return p == OraclePrecision::Binary64 ? 0x1p-53 : 0x1p-106;
}

std::string_view to_string(WorkingPrecision p) {
  return p == WorkingPrecision::Binary32 ? "binary32" : "binary64";
}

std::string_view to_string(OraclePrecision p) {
  return p == OraclePrecision::Binary64 ? "binary64" : "double-double";
}

PrecisionSpec::PrecisionSpec(WorkingPrecision working, OraclePrecision oracle)
    : working_(working), oracle_(oracle) {
  if (!(unit_roundoff_of(oracle) < unit_roundoff_of(working))) {
    throw InvalidArgument("oracle precision must be wider than working precision");
  }
}

PrecisionSpec PrecisionSpec::with_default_oracle(WorkingPrecision working) {
  return working == WorkingPrecision::Binary32
             ? PrecisionSpec(working, OraclePrecision::Binary64)
             : PrecisionSpec(working, OraclePrecision::DoubleDouble);
}

double exact_inner_product(std::span<const double> x, std::span<const double> y,
                           OraclePrecision oracle) {
  return oracle_dot(x, y, oracle).to_double();
}

double relative_error(double approx, double exact) {
  if (exact == 0.0) throw ZeroInnerProduct();
  return std::fabs(approx - exact) / std::fabs(exact);
}

RoundoffTrace accumulate(std::span<const double> x, std::span<const double> y,
                         const PrecisionSpec& prec, TraceMode mode) {
  return prec.working() == WorkingPrecision::Binary32
             ? accumulate_impl<float>(x, y, prec, mode)
             : accumulate_impl<double>(x, y, prec, mode);
}

LocalErrorResult accumulate_model1(std::span<const double> x,
                                   std::span<const double> y,
                                   const PrecisionSpec& prec) {
  return prec.working() == WorkingPrecision::Binary32 ? model1_impl<float>(x, y)
                                                      : model1_impl<double>(x, y);
}

double plain_working_dot(std::span<const double> x, std::span<const double> y,
                         WorkingPrecision working) {
  return working == WorkingPrecision::Binary32 ? plain_dot_impl<float>(x, y)
                                               : plain_dot_impl<double>(x, y);
}

bool working_arithmetic_is_unfused() {
  // (1 + 2^-12)^2 = 1 + 2^-11 + 2^-24 rounds to 1 + 2^-11 in binary32;
  // a fused evaluation of a*a - (1 + 2^-11) would return 2^-24 instead.
  volatile float af = 1.0f + 0x1p-12f;
  volatile float cf = -(1.0f + 0x1p-11f);
  const float a = af;
  const float rf = a * a + cf;
  volatile double ad = 1.0 + 0x1p-27;
  volatile double cd = -(1.0 + 0x1p-26);
  const double b = ad;
  const double rd = b * b + cd;
  return rf == 0.0f && rd == 0.0;
}

PerturbedPair perturb_vectors(std::span<const double> x,
                              std::span<const double> y, double u,
                              PerturbationDist dist, std::uint64_t seed) {
  check_lengths(x, y);
  if (!(u >= 0.0 && u < 1.0)) throw InvalidArgument("perturbation size must lie in [0, 1)");
  const CounterRng rx(seed, streams::kPerturbX);
  const CounterRng ry(seed, streams::kPerturbY);
  auto draw = [&](const CounterRng& rng, std::size_t k) {
    if (dist == PerturbationDist::Uniform) {
      return u * (2.0 * rng.uniform(k) - 1.0);
    }
    return (rng.bits(k) >> 63) ? u : -u;
  };

  const std::size_t n = x.size();
  PerturbedPair p;
  p.xhat.resize(n);
  p.yhat.resize(n);
  p.delta.resize(n);
  p.theta.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    p.delta[k] = draw(rx, k);
    p.theta[k] = draw(ry, k);
    p.xhat[k] = x[k] + x[k] * p.delta[k];
    p.yhat[k] = y[k] + y[k] * p.theta[k];
  }
  return p;
}

double perturbation_error(std::span<const double> x, std::span<const double> y,
                          const PerturbedPair& perturbed,
                          OraclePrecision oracle) {
  const DoubleDouble exact = oracle_dot(x, y, oracle);
  const DoubleDouble pert = oracle_dot(perturbed.xhat, perturbed.yhat, oracle);
  const double den = exact.to_double();
  if (den == 0.0) throw ZeroInnerProduct();
  return std::fabs((pert - exact).to_double()) / std::fabs(den);
}

}  // namespace dotbounds
