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

// Dimension sweeps, Monte-Carlo checks of the Azuma tail, and the scan for
// dimensions where a probabilistic bound stops holding.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dotbounds/bounds.hpp"
#include "dotbounds/fpsim.hpp"
#include "dotbounds/generators.hpp"

namespace dotbounds {

enum class Experiment {
  Amplifiers,
  Perturbation,
  RoundoffIndep,
  RoundoffGeneral,
  AzumaMC,
  ViolationScan,
};

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

enum class GridKind {
  Geometric,   // n_min * 10^j up to n_max
  LinearSteps,  // n_min, then n_max/100, 2 n_max/100, ..., n_max
};

enum class SortOrder { None, Ascending, Descending };

std::string_view to_string(GridKind g);
std::optional<GridKind> parse_grid(std::string_view name);
std::string_view to_string(SortOrder s);
std::optional<SortOrder> parse_sort(std::string_view name);
std::string_view to_string(PerturbationDist d);
std::optional<PerturbationDist> parse_dist(std::string_view name);

/// Strictly increasing dimension grid. Throws InvalidArgument when
/// n_min < 1 or n_max < n_min.
std::vector<std::size_t> make_grid(GridKind kind, std::size_t n_min,
                                   std::size_t n_max);

/// 1-2-5 sequence per decade between n_min and n_max, plus n_max itself.
std::vector<std::size_t> scan_grid(std::size_t n_min, std::size_t n_max);

struct ExperimentConfig {
  Experiment experiment = Experiment::RoundoffGeneral;
  std::vector<std::size_t> n_grid;
  double delta = 1e-16;
  PrecisionSpec prec;
  std::optional<double> u;  // bound-evaluation u; default: working precision
  std::vector<Family> families{Family::MixedSign};
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::size_t trials = 100000;
  PerturbationDist dist = PerturbationDist::Uniform;
  SortOrder sort = SortOrder::None;
  bool fresh_draws = false;  // default: prefixes of one vector per seed
  std::string coeffs;        // AzumaMC coefficient spec, e.g. "equal:100"
  std::string out_path;
  unsigned threads = 0;      // 0: hardware concurrency

  UnitRoundoff unit_roundoff() const;
  /// Throws InvalidArgument on an empty or non-increasing grid, empty
  /// seeds or families, or a delta outside (0, 1).
  void validate() const;
};

/// One (experiment, family, seed, n) grid cell.
struct SweepRecord {
  Experiment experiment = Experiment::RoundoffGeneral;
  Family family = Family::MixedSign;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  SortOrder order = SortOrder::None;
  bool zero_inner_product = false;
  BoundReport report;
};

/// Runs the sweep named by cfg.experiment (one of the four sweep kinds).
/// Records are ordered by (family, n, seed) regardless of thread count.
std::vector<SweepRecord> run_sweep(const ExperimentConfig& cfg);

std::vector<SweepRecord> run_amplifiers(const ExperimentConfig& cfg);
std::vector<SweepRecord> run_perturbation(const ExperimentConfig& cfg);
std::vector<SweepRecord> run_roundoff_indep(const ExperimentConfig& cfg);
std::vector<SweepRecord> run_roundoff_general(const ExperimentConfig& cfg);

/// Evaluates one cell. Exposed for the CLI report and for tests.
SweepRecord evaluate_cell(Experiment experiment, const VectorPair& pair,
                          std::span<const double> x, std::span<const double> y,
                          const ExperimentConfig& cfg);

/// Re-checks the ratio identities between paired bounds and that no
/// deterministic bound is flagged. Throws ConsistencyError.
void check_consistency(const SweepRecord& record, FailureProbability delta);

struct AzumaResult {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double rate = 0.0;
  double threshold = 0.0;  // azuma_tail(coeffs, delta)
  /// delta + 3 sqrt(delta / trials).
  double allowed_rate = 0.0;
};

/// Draws `trials` Rademacher sums sum_k eps_k c_k and counts those whose
/// magnitude exceeds azuma_tail(coeffs, delta).
AzumaResult azuma_monte_carlo(std::span<const double> coeffs,
                              FailureProbability delta, std::size_t trials,
                              std::uint64_t seed);

/// "equal:N" (N unit coefficients) or a comma-separated list.
std::vector<double> parse_coeff_spec(std::string_view spec);

struct ScanEntry {
  std::uint64_t seed = 0;
  SortOrder order = SortOrder::None;
  BoundId bound = BoundId::ProbIndep;
  std::optional<std::size_t> first_violation;
};

struct ScanResult {
  Family family = Family::MixedSign;
  std::vector<std::size_t> grid;
  std::vector<ScanEntry> entries;  // ordered by (seed, order, bound)
  std::vector<SweepRecord> rows;   // every evaluated cell, same order

  /// First violation of a bound for one (seed, order), if any.
  std::optional<std::size_t> first(std::uint64_t seed, SortOrder order,
                                   BoundId bound) const;
};

/// Bounds examined by the scan: the probabilistic roundoff bounds.
std::span<const BoundId> scan_bounds();

/// Forward scan over scan_grid(n_min, n_max) for every seed, once with the
/// generated order and once each with products sorted ascending and
/// descending by magnitude.
ScanResult violation_scan(Family family, FailureProbability delta,
                          const PrecisionSpec& prec, std::size_t n_max,
                          std::span<const std::uint64_t> seeds,
                          std::size_t n_min = 10, unsigned threads = 0);

/// Reorders the pairs (x_k, y_k) by |x_k y_k|. Stable, so ties keep order.
void sort_by_product(std::span<double> x, std::span<double> y, SortOrder order);

}  // namespace dotbounds
