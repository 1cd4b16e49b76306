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

#include "dotbounds/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "dotbounds/rng.hpp"

namespace dotbounds {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::uint64_t cell_seed(std::uint64_t seed, std::size_t n) {
  return splitmix64_mix(seed ^ splitmix64_mix(static_cast<std::uint64_t>(n)));
}

bool is_sweep(Experiment e) {
  return e == Experiment::Amplifiers || e == Experiment::Perturbation ||
         e == Experiment::RoundoffIndep || e == Experiment::RoundoffGeneral;
}

BoundReport nan_report(std::size_t n) {
  BoundReport r;
  r.n = n;
  r.exact = 0.0;
  r.empirical_rel_error = kNaN;
  r.kappa1 = r.kappa2 = r.kappa_inf = kNaN;
  r.det_perturb_p2 = r.prob_perturb = kNaN;
  r.det_trad = r.det_indep = r.prob_indep = kNaN;
  r.det_martingale = r.prob_martingale = kNaN;
  r.compact_upper = r.simplest_prob = kNaN;
  return r;
}

// Dimension used to generate a base vector whose prefixes serve every cell.
std::size_t base_dimension(Family family, std::size_t n_max) {
  if (family == Family::AlternatingProducts && n_max % 2 == 0) return n_max + 1;
  return n_max;
}

void check_ratio(double num, double den, double expected, std::string_view what) {
  const double ratio = num / den;
  if (!(std::fabs(ratio - expected) <= 1e-12 * expected)) {
    throw ConsistencyError(std::string(what) + " ratio identity failed");
  }
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::Amplifiers: return "amplifiers";
    case Experiment::Perturbation: return "perturbation";
    case Experiment::RoundoffIndep: return "roundoff-indep";
    case Experiment::RoundoffGeneral: return "roundoff-general";
    case Experiment::AzumaMC: return "azuma";
    case Experiment::ViolationScan: return "scan";
  }
  return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (auto e : {Experiment::Amplifiers, Experiment::Perturbation,
                 Experiment::RoundoffIndep, Experiment::RoundoffGeneral,
                 Experiment::AzumaMC, Experiment::ViolationScan}) {
    if (to_string(e) == name) return e;
  }
  return std::nullopt;
}

std::string_view to_string(GridKind g) {
  return g == GridKind::Geometric ? "geometric" : "linear-steps";
}

std::optional<GridKind> parse_grid(std::string_view name) {
  if (name == "geometric") return GridKind::Geometric;
  if (name == "linear-steps") return GridKind::LinearSteps;
  return std::nullopt;
}

std::string_view to_string(SortOrder s) {
  switch (s) {
    case SortOrder::None: return "none";
    case SortOrder::Ascending: return "asc";
    case SortOrder::Descending: return "desc";
  }
  return "unknown";
}

std::optional<SortOrder> parse_sort(std::string_view name) {
  if (name == "none") return SortOrder::None;
  if (name == "asc") return SortOrder::Ascending;
  if (name == "desc") return SortOrder::Descending;
  return std::nullopt;
}

std::string_view to_string(PerturbationDist d) {
  return d == PerturbationDist::Uniform ? "uniform" : "two-point";
}

std::optional<PerturbationDist> parse_dist(std::string_view name) {
  if (name == "uniform") return PerturbationDist::Uniform;
  if (name == "two-point") return PerturbationDist::TwoPoint;
  return std::nullopt;
}

std::vector<std::size_t> make_grid(GridKind kind, std::size_t n_min,
                                   std::size_t n_max) {
  if (n_min < 1 || n_max < n_min) {
    throw InvalidArgument("grid needs 1 <= n_min <= n_max");
  }
  std::vector<std::size_t> grid;
  if (kind == GridKind::Geometric) {
    for (std::size_t n = n_min; n <= n_max; n *= 10) {
      grid.push_back(n);
      if (n > std::numeric_limits<std::size_t>::max() / 10) break;
    }
  } else {
    grid.push_back(n_min);
    const std::size_t step = std::max<std::size_t>(1, n_max / 100);
    for (std::size_t n = step; n <= n_max; n += step) {
      if (n > n_min) grid.push_back(n);
    }
  }
  if (grid.back() < n_max) grid.push_back(n_max);
  return grid;
}

std::vector<std::size_t> scan_grid(std::size_t n_min, std::size_t n_max) {
  if (n_min < 1 || n_max < n_min) {
    throw InvalidArgument("grid needs 1 <= n_min <= n_max");
  }
  std::vector<std::size_t> grid;
  for (std::size_t decade = 1; decade <= n_max; decade *= 10) {
    for (std::size_t m : {1, 2, 5}) {
      const std::size_t n = m * decade;
      if (n >= n_min && n <= n_max) grid.push_back(n);
    }
    if (decade > std::numeric_limits<std::size_t>::max() / 10) break;
  }
  if (grid.empty() || grid.back() < n_max) grid.push_back(n_max);
  return grid;
}

UnitRoundoff ExperimentConfig::unit_roundoff() const {
  return u ? UnitRoundoff(*u) : prec.unit_roundoff();
}

void ExperimentConfig::validate() const {
  FailureProbability{delta};
  (void)unit_roundoff();
  if (experiment == Experiment::AzumaMC) {
    if (trials < 1) throw InvalidArgument("trials must be >= 1");
    if (seeds.empty()) throw InvalidArgument("at least one seed is required");
    return;
  }
  if (n_grid.empty()) throw InvalidArgument("dimension grid is empty");
  if (n_grid.front() < 1) throw InvalidArgument("dimensions must be >= 1");
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1]) {
      throw InvalidArgument("dimension grid must be strictly increasing");
    }
  }
  if (seeds.empty()) throw InvalidArgument("at least one seed is required");
  if (families.empty()) throw InvalidArgument("at least one family is required");
}

void sort_by_product(std::span<double> x, std::span<double> y, SortOrder order) {
  if (order == SortOrder::None) return;
  if (x.size() != y.size()) throw LengthMismatch(x.size(), y.size());
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<double> mag(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mag[i] = std::fabs(x[i] * y[i]);
  if (order == SortOrder::Ascending) {
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return mag[a] < mag[b]; });
  } else {
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
  }
  std::vector<double> xs(x.size());
  std::vector<double> ys(y.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    xs[i] = x[idx[i]];
    ys[i] = y[idx[i]];
  }
  std::copy(xs.begin(), xs.end(), x.begin());
  std::copy(ys.begin(), ys.end(), y.begin());
}

SweepRecord evaluate_cell(Experiment experiment, const VectorPair& pair,
                          std::span<const double> x, std::span<const double> y,
                          const ExperimentConfig& cfg) {
  SweepRecord rec;
  rec.experiment = experiment;
  rec.family = pair.family;
  rec.seed = pair.seed;
  rec.n = x.size();

  const UnitRoundoff u = cfg.unit_roundoff();
  const FailureProbability delta(cfg.delta);
  const ProductSummary summary = ProductSummary::of(x, y, cfg.prec.oracle());
  if (summary.exact() == 0.0) {
    rec.zero_inner_product = true;
    rec.report = nan_report(rec.n);
    return rec;
  }
  rec.report = evaluate_bounds(summary, u, delta);

  switch (experiment) {
    case Experiment::Perturbation: {
      const auto perturbed = perturb_vectors(x, y, u.value(), cfg.dist,
                                             cell_seed(pair.seed, rec.n));
      record_error(rec.report,
                   perturbation_error(x, y, perturbed, cfg.prec.oracle()),
                   ErrorKind::Perturbation);
      break;
    }
    case Experiment::Amplifiers:
    case Experiment::RoundoffIndep:
    case Experiment::RoundoffGeneral:
    case Experiment::ViolationScan: {
      const auto trace = accumulate(x, y, cfg.prec, TraceMode::FinalOnly);
      const double err = std::fabs(trace.error) / std::fabs(trace.exact);
      record_error(rec.report, err,
                   experiment == Experiment::Amplifiers ? ErrorKind::None
                                                        : ErrorKind::Roundoff);
      break;
    }
    case Experiment::AzumaMC:
      throw InvalidArgument("azuma experiment has no grid cells");
  }
  return rec;
}

void check_consistency(const SweepRecord& record, FailureProbability delta) {
  if (record.zero_inner_product) return;
  const BoundReport& r = record.report;
  const double n = static_cast<double>(r.n);
  const double f = delta.factor();
  check_ratio(r.det_perturb_p2, r.prob_perturb, std::sqrt(n) / f, "perturbation");
  check_ratio(r.det_indep, r.prob_indep, std::sqrt(n) / f, "independent-roundoff");
  check_ratio(r.det_martingale, r.prob_martingale, std::sqrt(2.0 * n - 1.0) / f,
              "martingale");
  for (BoundId id : bounds_for(r.error_kind)) {
    if (is_deterministic(id) && r.is_violated(id)) {
      throw ConsistencyError("deterministic bound " + std::string(to_string(id)) +
                             " flagged as violated at n=" + std::to_string(r.n));
    }
  }
}

std::vector<SweepRecord> run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!is_sweep(cfg.experiment)) {
    throw InvalidArgument("experiment " + std::string(to_string(cfg.experiment)) +
                          " is not a dimension sweep");
  }
  const std::size_t n_max = cfg.n_grid.back();

  // Base vectors per (family, seed); cells read prefixes of them.
  struct Base {
    Family family;
    std::uint64_t seed;
    VectorPair pair;
  };
  std::vector<Base> bases;
  if (!cfg.fresh_draws) {
    bases.resize(cfg.families.size() * cfg.seeds.size());
    parallel_for(bases.size(), cfg.threads, [&](std::size_t i) {
      const Family f = cfg.families[i / cfg.seeds.size()];
      const std::uint64_t s = cfg.seeds[i % cfg.seeds.size()];
      bases[i] = {f, s,
                  generate(f, base_dimension(f, n_max), s, cfg.prec.working())};
    });
  }

  const std::size_t per_family = cfg.n_grid.size() * cfg.seeds.size();
  std::vector<SweepRecord> records(cfg.families.size() * per_family);
  parallel_for(records.size(), cfg.threads, [&](std::size_t i) {
    const std::size_t fi = i / per_family;
    const std::size_t ni = (i % per_family) / cfg.seeds.size();
    const std::size_t si = i % cfg.seeds.size();
    const Family family = cfg.families[fi];
    const std::uint64_t seed = cfg.seeds[si];
    const std::size_t n = cfg.n_grid[ni];
    if (family == Family::AlternatingProducts && n % 2 == 0) {
      throw EvenDimension(n);
    }

    VectorPair local;
    std::span<const double> x;
    std::span<const double> y;
    if (cfg.fresh_draws) {
      local = generate(family, n, cell_seed(seed, n), cfg.prec.working());
      local.seed = seed;
    } else {
      const VectorPair& base = bases[fi * cfg.seeds.size() + si].pair;
      local.family = family;
      local.seed = seed;
      local.working = base.working;
      if (cfg.sort != SortOrder::None) {
        local.x.assign(base.x.begin(), base.x.begin() + n);
        local.y.assign(base.y.begin(), base.y.begin() + n);
      } else {
        x = std::span<const double>(base.x).first(n);
        y = std::span<const double>(base.y).first(n);
      }
    }
    if (!local.x.empty()) {
      sort_by_product(local.x, local.y, cfg.sort);
      x = local.x;
      y = local.y;
    }
    records[i] = evaluate_cell(cfg.experiment, local, x, y, cfg);
    records[i].order = cfg.sort;
    check_consistency(records[i], FailureProbability(cfg.delta));
  });
  return records;
}

namespace {
std::vector<SweepRecord> run_checked(const ExperimentConfig& cfg, Experiment e) {
  if (cfg.experiment != e) {
    throw InvalidArgument("config is for experiment " +
                          std::string(to_string(cfg.experiment)));
  }
  return run_sweep(cfg);
}
}  // namespace

std::vector<SweepRecord> run_amplifiers(const ExperimentConfig& cfg) {
  return run_checked(cfg, Experiment::Amplifiers);
}
std::vector<SweepRecord> run_perturbation(const ExperimentConfig& cfg) {
  return run_checked(cfg, Experiment::Perturbation);
}
std::vector<SweepRecord> run_roundoff_indep(const ExperimentConfig& cfg) {
  return run_checked(cfg, Experiment::RoundoffIndep);
}
std::vector<SweepRecord> run_roundoff_general(const ExperimentConfig& cfg) {
  return run_checked(cfg, Experiment::RoundoffGeneral);
}

AzumaResult azuma_monte_carlo(std::span<const double> coeffs,
                              FailureProbability delta, std::size_t trials,
                              std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  AzumaResult r;
  r.trials = trials;
  r.threshold = azuma_tail(coeffs, delta);
  r.allowed_rate =
      delta.value() + 3.0 * std::sqrt(delta.value() / static_cast<double>(trials));

  const CounterRng rng(seed, streams::kAzuma);
  const std::size_t words = (coeffs.size() + 63) / 64;
  for (std::size_t t = 0; t < trials; ++t) {
    double sum = 0.0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = rng.bits(t * words + w);
      const std::size_t end = std::min(coeffs.size(), (w + 1) * 64);
      for (std::size_t k = w * 64; k < end; ++k, bits >>= 1) {
        sum += (bits & 1u) ? coeffs[k] : -coeffs[k];
      }
    }
    if (std::fabs(sum) > r.threshold) ++r.violations;
  }
  r.rate = static_cast<double>(r.violations) / static_cast<double>(trials);
  return r;
}

std::vector<double> parse_coeff_spec(std::string_view spec) {
  auto parse_number = [](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !(v >= 0.0) ||
        !std::isfinite(v)) {
      throw InvalidArgument("bad coefficient '" + std::string(s) + "'");
    }
    return v;
  };
  std::vector<double> out;
  if (spec.starts_with("equal:")) {
    const std::string_view count = spec.substr(6);
    std::size_t m = 0;
    const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), m);
    if (ec != std::errc() || ptr != count.data() + count.size() || m == 0) {
      throw InvalidArgument("bad coefficient count in '" + std::string(spec) + "'");
    }
    out.assign(m, 1.0);
    return out;
  }
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    out.push_back(parse_number(spec.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    spec.remove_prefix(comma + 1);
  }
  if (out.empty()) throw InvalidArgument("empty coefficient list");
  return out;
}

std::span<const BoundId> scan_bounds() {
  static constexpr std::array kScan{BoundId::ProbIndep, BoundId::ProbMart,
                                    BoundId::CompactUpper, BoundId::SimplestProb};
  return kScan;
}

std::optional<std::size_t> ScanResult::first(std::uint64_t seed, SortOrder order,
                                             BoundId bound) const {
  for (const auto& e : entries) {
    if (e.seed == seed && e.order == order && e.bound == bound) {
      return e.first_violation;
    }
  }
  return std::nullopt;
}

ScanResult violation_scan(Family family, FailureProbability delta,
                          const PrecisionSpec& prec, std::size_t n_max,
                          std::span<const std::uint64_t> seeds, std::size_t n_min,
                          unsigned threads) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  if (seeds.empty()) throw InvalidArgument("at least one seed is required");

  ScanResult result;
  result.family = family;
  result.grid = scan_grid(std::min(n_min, n_max), n_max);
  if (family == Family::AlternatingProducts) {
    std::erase_if(result.grid, [](std::size_t n) { return n % 2 == 0; });
    if (result.grid.empty()) throw EvenDimension(n_max);
  }

  ExperimentConfig cfg;
  cfg.experiment = Experiment::ViolationScan;
  cfg.delta = delta.value();
  cfg.prec = prec;

  std::vector<VectorPair> bases(seeds.size());
  parallel_for(seeds.size(), threads, [&](std::size_t i) {
    bases[i] = generate(family, base_dimension(family, n_max), seeds[i],
                        prec.working());
  });

  constexpr std::array kOrders{SortOrder::None, SortOrder::Ascending,
                               SortOrder::Descending};
  const std::size_t per_seed = kOrders.size() * result.grid.size();
  result.rows.resize(seeds.size() * per_seed);
  parallel_for(result.rows.size(), threads, [&](std::size_t i) {
    const std::size_t si = i / per_seed;
    const SortOrder order = kOrders[(i % per_seed) / result.grid.size()];
    const std::size_t n = result.grid[i % result.grid.size()];
    const VectorPair& base = bases[si];
    VectorPair local;
    local.family = family;
    local.seed = seeds[si];
    local.working = base.working;
    local.x.assign(base.x.begin(), base.x.begin() + n);
    local.y.assign(base.y.begin(), base.y.begin() + n);
    sort_by_product(local.x, local.y, order);
    result.rows[i] = evaluate_cell(Experiment::ViolationScan, local, local.x,
                                   local.y, cfg);
    result.rows[i].order = order;
    check_consistency(result.rows[i], delta);
  });

  for (std::size_t si = 0; si < seeds.size(); ++si) {
    for (std::size_t oi = 0; oi < kOrders.size(); ++oi) {
      for (BoundId bound : scan_bounds()) {
        ScanEntry e{seeds[si], kOrders[oi], bound, std::nullopt};
        for (std::size_t ni = 0; ni < result.grid.size(); ++ni) {
          const auto& row = result.rows[si * per_seed + oi * result.grid.size() + ni];
          if (!row.zero_inner_product && row.report.is_violated(bound)) {
            e.first_violation = row.n;
            break;
          }
        }
        result.entries.push_back(e);
      }
    }
  }
  return result;
}

}  // namespace dotbounds
