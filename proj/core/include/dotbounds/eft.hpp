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

// Error-free transformations and compensated accumulators.
//
// TwoSum and TwoProduct return the rounded result of one floating-point
// operation together with its exact rounding error, so that
// a + b == s + e and a * b == p + e hold in exact arithmetic.

#include <cmath>
#include <type_traits>

namespace dotbounds {

template <typename T>
struct Pair {
  T value;
  T error;
};

/// Knuth's TwoSum: branch-free, valid for any ordering of |a| and |b|.
template <typename T>
Pair<T> two_sum(T a, T b) {
  static_assert(std::is_floating_point_v<T>);
  const T s = a + b;
  const T bb = s - a;
  const T err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

/// Dekker's FastTwoSum; requires |a| >= |b| or a == 0.
template <typename T>
Pair<T> fast_two_sum(T a, T b) {
  const T s = a + b;
  const T err = b - (s - a);
  return {s, err};
}

/// Product with its exact residual.
/// binary32 goes through binary64, where a 24x24-bit product is exact;
/// binary64 uses a fused multiply-add, which is exact for the residual.
inline Pair<float> two_product(float a, float b) {
  const double exact = static_cast<double>(a) * static_cast<double>(b);
  const float p = static_cast<float>(exact);
  return {p, static_cast<float>(exact - static_cast<double>(p))};
}

inline Pair<double> two_product(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  DoubleDouble() = default;
  DoubleDouble(double h) : hi(h) {}  // NOLINT(google-explicit-constructor)
  DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }

  DoubleDouble& operator+=(double b) {
    const auto [s, e] = two_sum(hi, b);
    const auto [h, l] = fast_two_sum(s, e + lo);
    hi = h;
    lo = l;
    return *this;
  }

  DoubleDouble& operator+=(const DoubleDouble& b) {
    const auto [s, e] = two_sum(hi, b.hi);
    const auto [t, f] = two_sum(lo, b.lo);
    auto [h, l] = fast_two_sum(s, e + t);
    const auto [h2, l2] = fast_two_sum(h, l + f);
    hi = h2;
    lo = l2;
    return *this;
  }

  friend DoubleDouble operator+(DoubleDouble a, const DoubleDouble& b) {
    return a += b;
  }
  friend DoubleDouble operator-(const DoubleDouble& a) {
    return {-a.hi, -a.lo};
  }
  friend DoubleDouble operator-(DoubleDouble a, const DoubleDouble& b) {
    return a += -b;
  }
};

/// Neumaier's improved Kahan-Babuska summation in binary64.
/// Error is bounded by 2u|s| + O(n u^2) sum|x_i|.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  double value() const { return sum_ + comp_; }
  DoubleDouble pair() const {
    const auto [h, l] = fast_two_sum(sum_, comp_);
    return {h, l};
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace dotbounds
