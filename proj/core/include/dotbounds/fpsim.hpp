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

// Reduced-precision simulation of sequential inner-product accumulation.
//
// The working precision runs one multiply or one add per step, with the
// product stored before it is added so no fused multiply-add can occur.
// Every operation's relative roundoff is recovered exactly with an
// error-free transformation; exact references come from a wider oracle.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dotbounds/types.hpp"

namespace dotbounds {

enum class WorkingPrecision { Binary32, Binary64 };
enum class OraclePrecision { Binary64, DoubleDouble };

double unit_roundoff_of(WorkingPrecision p);
double unit_roundoff_of(OraclePrecision p);

std::string_view to_string(WorkingPrecision p);
std::string_view to_string(OraclePrecision p);

/// Working precision paired with a strictly wider oracle.
class PrecisionSpec {
 public:
  /// binary32 working with a binary64 oracle.
  PrecisionSpec() = default;
  PrecisionSpec(WorkingPrecision working, OraclePrecision oracle);

  /// Default oracle for a working precision: binary64 for binary32,
  /// double-double for binary64.
  static PrecisionSpec with_default_oracle(WorkingPrecision working);

  WorkingPrecision working() const { return working_; }
  OraclePrecision oracle() const { return oracle_; }
  UnitRoundoff unit_roundoff() const {
    return UnitRoundoff(unit_roundoff_of(working_));
  }

  friend bool operator==(const PrecisionSpec&, const PrecisionSpec&) = default;

 private:
  WorkingPrecision working_ = WorkingPrecision::Binary32;
  OraclePrecision oracle_ = OraclePrecision::Binary64;
};

/// Inner product of x and y in the oracle precision.
///
/// Binary64: products rounded to binary64 (exact for binary32 inputs) and
/// accumulated with Neumaier compensation. DoubleDouble: exact products via
/// TwoProduct, accumulated in double-double.
double exact_inner_product(std::span<const double> x, std::span<const double> y,
                           OraclePrecision oracle = OraclePrecision::Binary64);

/// |approx - exact| / |exact|; throws ZeroInnerProduct when exact == 0.
double relative_error(double approx, double exact);

enum class TraceMode {
  Full,       // keep every partial sum, roundoff and error
  FinalOnly,  // streaming: only the final result and error
};

/// Step-by-step record of one accumulation. Indices are zero-based in
/// storage: shat[i] holds s-hat_{i+1}, deltas[i] holds delta_{i+1}.
///
/// For k >= 2 the odd entries s-hat_{2k-1} = s-hat_{2k-2} + fl(x_k y_k) are
/// exact intermediate values that the working precision never stores; they
/// are kept in binary64, rounded when the exact value needs more bits.
struct RoundoffTrace {
  std::size_t n = 0;
  PrecisionSpec prec;
  std::vector<double> shat;     // 2n computed partial sums
  std::vector<double> s_exact;  // 2n oracle partial sums
  std::vector<double> deltas;   // 2n-1 extracted relative roundoffs
  std::vector<double> z;        // 2n partial-sum errors shat_k - s_k

  double result = 0.0;  // fl(x^T y), bit-identical to a plain working loop
  double exact = 0.0;   // oracle x^T y
  double error = 0.0;   // result - exact, evaluated without cancellation
  double max_abs_delta = 0.0;

  bool has_steps() const { return !shat.empty(); }
};

/// Runs the accumulation of the two-step (multiply, add) roundoff model.
/// Throws InputNotRepresentable when an element is not exactly a working
/// precision value, LengthMismatch on unequal lengths.
RoundoffTrace accumulate(std::span<const double> x, std::span<const double> y,
                         const PrecisionSpec& prec,
                         TraceMode mode = TraceMode::Full);

/// Exact-match overload so calls with vectors never resolve to
/// std::accumulate through argument-dependent lookup.
inline RoundoffTrace accumulate(const std::vector<double>& x,
                                const std::vector<double>& y,
                                const PrecisionSpec& prec,
                                TraceMode mode = TraceMode::Full) {
  return accumulate(std::span<const double>(x), std::span<const double>(y), prec,
                    mode);
}

/// Result of the traditional model: one relative factor per summand.
struct LocalErrorResult {
  double value = 0.0;                // z-hat_n
  std::vector<double> thetas;        // product roundoffs theta_1..theta_n
  std::vector<double> deltas;        // addition roundoffs delta_2..delta_n
  std::vector<double> local_errors;  // Z_1..Z_n, summing to the total error
};

/// Same arithmetic as accumulate(), with the bookkeeping of the traditional
/// model: Z_k = x_k y_k ((1 + theta_k) prod_{l >= max(k,2)} (1 + delta_l) - 1).
LocalErrorResult accumulate_model1(std::span<const double> x,
                                   std::span<const double> y,
                                   const PrecisionSpec& prec);

/// Plain working-precision loop with stored products. Reference for the
/// bit-identity contract of accumulate().
double plain_working_dot(std::span<const double> x, std::span<const double> y,
                         WorkingPrecision working);

/// True when working-precision a*b+c is evaluated as two roundings. Fails
/// if the build contracted multiply-add into FMA.
bool working_arithmetic_is_unfused();

enum class PerturbationDist {
  Uniform,   // iid uniform on [-u, u]
  TwoPoint,  // iid +-u with probability 1/2 each
};

struct PerturbedPair {
  std::vector<double> xhat;   // (1 + delta_k) x_k
  std::vector<double> yhat;   // (1 + theta_k) y_k
  std::vector<double> delta;  // relative perturbations of x
  std::vector<double> theta;  // relative perturbations of y
};

/// Componentwise relative perturbations, applied in binary64.
/// u == 0 is allowed and returns the inputs unchanged.
PerturbedPair perturb_vectors(std::span<const double> x,
                              std::span<const double> y, double u,
                              PerturbationDist dist, std::uint64_t seed);

/// Relative error of x-hat^T y-hat against x^T y, both in the oracle.
double perturbation_error(std::span<const double> x, std::span<const double> y,
                          const PerturbedPair& perturbed,
                          OraclePrecision oracle);

}  // namespace dotbounds
