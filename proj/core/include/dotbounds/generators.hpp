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

// Seeded test-vector families.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dotbounds/fpsim.hpp"

namespace dotbounds {

enum class Family {
  MixedSign,            // iid standard normal
  SameSign,             // absolute values of the MixedSign draws
  UniformSign,          // iid uniform on [0, 1), as a Matlab rand() stream
  EqualProducts,        // x = 1, y = w: every product equals w
  AlternatingProducts,  // x = 1, y_k = (-1)^k w, n odd
};

std::string_view to_string(Family f);
/// Accepts the CLI spellings: mixed, same, uniform, equal, alternating.
std::optional<Family> parse_family(std::string_view name);

struct VectorPair {
  std::vector<double> x;
  std::vector<double> y;
  Family family = Family::MixedSign;
  std::uint64_t seed = 0;
  WorkingPrecision working = WorkingPrecision::Binary32;

  std::size_t n() const { return x.size(); }
};

/// Deterministic in (family, n, seed, working); element k depends only on
/// (family, seed, k), so shorter outputs are prefixes of longer ones.
/// Every value is exactly representable in the working precision.
/// Throws EvenDimension for AlternatingProducts with even n.
VectorPair generate(Family family, std::size_t n, std::uint64_t seed,
                    WorkingPrecision working = WorkingPrecision::Binary32);

/// The common w of EqualProducts / AlternatingProducts, in [0.5, 1).
double product_scale(std::uint64_t seed, WorkingPrecision working);

/// Writes "x,y" per line with round-trip exact decimals.
void write_pair_csv(std::ostream& out, const VectorPair& pair);

/// Reads two comma-separated columns; a header line is skipped when its
/// first field is not numeric. Throws Error on malformed input and
/// LengthMismatch when a row has only one column.
VectorPair read_pair_csv(std::istream& in);

/// Shortest decimal that parses back to the same double.
std::string format_exact(double v);

}  // namespace dotbounds
