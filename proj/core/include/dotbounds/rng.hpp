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

// Counter-based random streams.
//
// Every draw is a pure function of (seed, stream, index): the k-th element
// of a vector never depends on how many elements were generated before it,
// which gives reproducible prefixes and order-independent parallel use.

#include <cstdint>
#include <string_view>

namespace dotbounds {

/// Algorithm identifier written into every output's metadata.
inline constexpr std::string_view kRngAlgorithm =
    "splitmix64-counter/box-muller-cos";

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64_mix(seed ^ splitmix64_mix(stream + 0x632be59bd9b4e019ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t index) const {
    return splitmix64_mix(key_ + (index + 1) * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11) * 0x1p-53;
  }

  /// Uniform on (0, 1]; safe as a logarithm argument.
  double uniform_open0(std::uint64_t index) const {
    return (static_cast<double>(bits(index) >> 11) + 1.0) * 0x1p-53;
  }

  /// Standard normal via Box-Muller from draws 2*index and 2*index + 1.
  double normal(std::uint64_t index) const;

 private:
  std::uint64_t key_;
};

// Stream identifiers; fixed so outputs stay stable across releases.
namespace streams {
inline constexpr std::uint64_t kX = 1;
inline constexpr std::uint64_t kY = 2;
inline constexpr std::uint64_t kScale = 3;
inline constexpr std::uint64_t kPerturbX = 11;
inline constexpr std::uint64_t kPerturbY = 12;
inline constexpr std::uint64_t kAzuma = 21;
}  // namespace streams

}  // namespace dotbounds
