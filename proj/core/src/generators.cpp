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

#include "dotbounds/generators.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "dotbounds/rng.hpp"

namespace dotbounds {
namespace {

double quantize(double v, WorkingPrecision working) {
  return working == WorkingPrecision::Binary32
             ? static_cast<double>(static_cast<float>(v))
             : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::MixedSign: return "mixed";
    case Family::SameSign: return "same";
    case Family::UniformSign: return "uniform";
    case Family::EqualProducts: return "equal";
    case Family::AlternatingProducts: return "alternating";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  static constexpr std::array<std::pair<std::string_view, Family>, 10> kNames{{
      {"mixed", Family::MixedSign},
      {"mixed-sign", Family::MixedSign},
      {"same", Family::SameSign},
      {"same-sign", Family::SameSign},
      {"uniform", Family::UniformSign},
      {"uniform-sign", Family::UniformSign},
      {"equal", Family::EqualProducts},
      {"equal-products", Family::EqualProducts},
      {"alternating", Family::AlternatingProducts},
      {"alternating-products", Family::AlternatingProducts},
  }};
  for (const auto& [key, f] : kNames) {
    if (key == name) return f;
  }
  return std::nullopt;
}

double product_scale(std::uint64_t seed, WorkingPrecision working) {
  const CounterRng rng(seed, streams::kScale);
  return quantize(0.5 + 0.5 * rng.uniform(0), working);
}

VectorPair generate(Family family, std::size_t n, std::uint64_t seed,
                    WorkingPrecision working) {
  if (n == 0) throw InvalidArgument("dimension must be >= 1");
  if (family == Family::AlternatingProducts && n % 2 == 0) {
    throw EvenDimension(n);
  }
  VectorPair p;
  p.family = family;
  p.seed = seed;
  p.working = working;
  p.x.resize(n);
  p.y.resize(n);

  const CounterRng rx(seed, streams::kX);
  const CounterRng ry(seed, streams::kY);
  switch (family) {
    case Family::MixedSign:
    case Family::SameSign: {
      const bool abs = family == Family::SameSign;
      for (std::size_t k = 0; k < n; ++k) {
        const double a = rx.normal(k);
        const double b = ry.normal(k);
        p.x[k] = quantize(abs ? std::fabs(a) : a, working);
        p.y[k] = quantize(abs ? std::fabs(b) : b, working);
      }
      break;
    }
    case Family::UniformSign:
      for (std::size_t k = 0; k < n; ++k) {
        p.x[k] = quantize(rx.uniform(k), working);
        p.y[k] = quantize(ry.uniform(k), working);
      }
      break;
    case Family::EqualProducts:
    case Family::AlternatingProducts: {
      const double w = product_scale(seed, working);
      const bool alternate = family == Family::AlternatingProducts;
      for (std::size_t k = 0; k < n; ++k) {
        p.x[k] = 1.0;
        // 1-based index k+1: (-1)^(k+1) w
        p.y[k] = (alternate && k % 2 == 0) ? -w : w;
      }
      break;
    }
  }
  return p;
}

std::string format_exact(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void write_pair_csv(std::ostream& out, const VectorPair& pair) {
  out << "x,y\n";
  for (std::size_t k = 0; k < pair.n(); ++k) {
    out << format_exact(pair.x[k]) << ',' << format_exact(pair.y[k]) << '\n';
  }
}

VectorPair read_pair_csv(std::istream& in) {
  VectorPair p;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto comma = row.find(',');
    const std::string_view first = row.substr(0, comma);
    const auto xv = parse_double(first);
    if (!xv) {
      if (p.x.empty() && lineno == 1) continue;  // header
      throw Error("line " + std::to_string(lineno) + ": not a number: '" +
                  std::string(first) + "'");
    }
    if (comma == std::string_view::npos) {
      throw LengthMismatch(p.x.size() + 1, p.y.size());
    }
    const std::string_view second = row.substr(comma + 1);
    if (second.find(',') != std::string_view::npos) {
      throw Error("line " + std::to_string(lineno) + ": expected two columns");
    }
    const auto yv = parse_double(second);
    if (!yv) {
      if (trim(second).empty()) throw LengthMismatch(p.x.size() + 1, p.y.size());
      throw Error("line " + std::to_string(lineno) + ": not a number: '" +
                  std::string(second) + "'");
    }
    p.x.push_back(*xv);
    p.y.push_back(*yv);
  }
  if (p.x.empty()) throw Error("no vector data found");
  return p;
}

}  // namespace dotbounds
