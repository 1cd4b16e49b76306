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

#include <cmath>
#include <stdexcept>
#include <string>

namespace dotbounds {

// Base of every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Relative bounds divide by |x^T y|; an exactly zero inner product has none.
class ZeroInnerProduct : public Error {
 public:
  ZeroInnerProduct() : Error("exact inner product is zero") {}
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t nx, std::size_t ny)
      : Error("vector lengths differ: " + std::to_string(nx) + " vs " +
              std::to_string(ny)) {}
};

class InputNotRepresentable : public Error {
 public:
  explicit InputNotRepresentable(std::size_t index)
      : Error("element " + std::to_string(index) +
              " is not representable in the working precision") {}
};

class EvenDimension : public Error {
 public:
  explicit EvenDimension(std::size_t n)
      : Error("alternating products require an odd dimension, got " +
              std::to_string(n)) {}
};

// Raised when an emitted record fails a self-check (ratio identity, or a
// deterministic bound reported as violated). Always a bug, never data.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Unit roundoff u of a working precision, 0 < u < 1.
class UnitRoundoff {
 public:
  explicit UnitRoundoff(double u) : u_(u) {
    if (!(u > 0.0 && u < 1.0)) {
      throw InvalidArgument("unit roundoff must lie in (0, 1)");
    }
  }
  double value() const { return u_; }

  static UnitRoundoff binary32() { return UnitRoundoff(0x1p-24); }
  static UnitRoundoff binary64() { return UnitRoundoff(0x1p-53); }

  friend bool operator==(UnitRoundoff, UnitRoundoff) = default;

 private:
  double u_;
};

/// Failure probability delta of a probabilistic bound, 0 < delta < 1.
class FailureProbability {
 public:
  explicit FailureProbability(double delta) : delta_(delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
      throw InvalidArgument("failure probability must lie in (0, 1)");
    }
  }
  double value() const { return delta_; }

  /// sqrt(2 ln(2/delta)), the concentration factor shared by every
  /// probabilistic bound.
  double factor() const { return std::sqrt(2.0 * std::log(2.0 / delta_)); }

  friend bool operator==(FailureProbability, FailureProbability) = default;

 private:
  double delta_;
};

/// Hoelder exponent p of the amplifier; q is the conjugate exponent.
enum class Norm { One, Two, Inf };

}  // namespace dotbounds
