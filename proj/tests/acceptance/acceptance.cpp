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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dotbounds/bounds.hpp"
#include "dotbounds/experiments.hpp"
#include "dotbounds/fpsim.hpp"
#include "dotbounds/generators.hpp"
#include "dotbounds/report_io.hpp"
#include "oracles.hpp"

namespace {

using namespace dotbounds;
using oracle::Quad;

const UnitRoundoff kU32 = UnitRoundoff::binary32();
const FailureProbability kDelta16(1e-16);
const PrecisionSpec kSingle;

struct Outcome {
  bool pass;
  std::string detail;
};

ProductSummary ones(std::size_t n) {
  const std::vector<double> v(n, 1.0);
  return ProductSummary::of(v, v);
}

// First n in [1, n_max] from which pred holds for every larger n up to
// n_max, or nullopt if it fails at n_max.
std::optional<std::size_t> onset(std::size_t n_max,
                                 const std::function<bool(std::size_t)>& pred) {
  std::optional<std::size_t> first;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (pred(n)) {
      if (!first) first = n;
    } else {
      first.reset();
    }
  }
  return first;
}

Outcome crossovers() {
  constexpr std::size_t kMax = 3000;
  const auto perturb = onset(kMax, [](std::size_t n) {
    const auto s = ones(n);
    return prob_perturbation_bound(s, kU32, kDelta16) <
           det_perturbation_bound(s, kU32, Norm::Two);
  });
  const auto mart = onset(kMax, [](std::size_t n) {
    const auto s = ones(n);
    return prob_roundoff_martingale(s, kU32, kDelta16) < det_roundoff_martingale(s, kU32);
  });
  const auto simplest = onset(kMax, [](std::size_t n) {
    const auto s = ones(n);
    return simplest_prob_bound(s, kU32, kDelta16) < det_roundoff_trad(s, kU32);
  });
  // Past the exhaustive range, spot-check a geometric grid.
  bool far_ok = true;
  for (std::size_t n = kMax; n <= 10000000; n = n * 3 / 2) {
    const auto s = ones(n);
    far_ok = far_ok &&
             prob_perturbation_bound(s, kU32, kDelta16) <
                 det_perturbation_bound(s, kU32, Norm::Two) &&
             prob_roundoff_martingale(s, kU32, kDelta16) < det_roundoff_martingale(s, kU32) &&
             simplest_prob_bound(s, kU32, kDelta16) < det_roundoff_trad(s, kU32);
  }
  const bool pass = perturb == 76u && mart == 39u && simplest && *simplest <= 81u && far_ok;
  std::ostringstream d;
  d << "perturbation from n=" << perturb.value_or(0) << ", martingale from n="
    << mart.value_or(0) << ", simplest vs traditional from n=" << simplest.value_or(0)
    << (far_ok ? "" : ", large-n check failed");
  return {pass, d.str()};
}

Outcome factor() {
  const double f = kDelta16.factor();
  std::ostringstream d;
  d.precision(17);
  d << "factor=" << f;
  return {f >= 8.6 && f <= 8.7, d.str()};
}

Outcome tightness_ratio() {
  const auto p = generate(Family::MixedSign, 1000000, 1);
  const auto s = ProductSummary::of(p.x, p.y);
  const double want = 1e3 / kDelta16.factor();
  const double r_perturb =
      det_perturbation_bound(s, kU32, Norm::Two) / prob_perturbation_bound(s, kU32, kDelta16);
  const double r_indep = det_roundoff_indep(s, kU32) / prob_roundoff_indep(s, kU32, kDelta16);
  const double e1 = std::fabs(r_perturb / want - 1.0);
  const double e2 = std::fabs(r_indep / want - 1.0);
  std::ostringstream d;
  d.precision(6);
  d << "ratio=" << r_perturb << ", relative deviations " << e1 << " and " << e2;
  return {e1 <= 1e-12 && e2 <= 1e-12, d.str()};
}

Outcome recursion_exactness() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto p = generate(Family::MixedSign, 10000, seed);
    const auto t = accumulate(p.x, p.y, kSingle);
    const double z = oracle::reconstruct_final_error(p.x, p.y, t.shat, t.deltas);
    const double direct = double(Quad(t.result) - oracle::quad_dot(p.x, p.y));
    worst = std::max(worst, oracle::ulps_between(z, direct));
  }
  return {worst <= 8.0, "max " + std::to_string(worst) + " ulps over 100 pairs"};
}

Outcome brute_force() {
  const double u = kU32.value();
  std::size_t patterns = 0;
  bool pass = true;
  double tightest = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto p = generate(Family::MixedSign, 3, seed);
    const Quad exact = oracle::quad_dot(p.x, p.y);
    const double det = det_roundoff_martingale(p.x, p.y, kU32);
    const double trad = det_roundoff_trad(p.x, p.y, kU32);
    double worst = 0.0;
    std::size_t count = 0;
    oracle::for_each_pattern(5, u, [&](std::span<const Quad> d) {
      const Quad r = oracle::model_result(p.x, p.y, d);
      worst = std::max(worst, double(oracle::qabs((r - exact) / exact)));
      ++count;
    });
    patterns = count;
    pass = pass && count == 243 && worst <= det && worst <= trad;
    tightest = std::max(tightest, worst / det);
  }
  return {pass, std::to_string(patterns) + " patterns x 20 pairs, max error/bound " +
                    std::to_string(tightest)};
}

Outcome partial_sum_bounds() {
  const double u = kU32.value();
  std::size_t checked = 0;
  bool pass = true;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto p = generate(Family::MixedSign, 1000, seed);
    const auto t = accumulate(p.x, p.y, kSingle);
    const auto c = coeffs_martingale(p.x, p.y, kU32).coeffs();
    for (std::size_t k = 1; k <= t.n; ++k) {
      const double odd_bound = c[2 * k - 2];
      pass = pass && std::fabs(t.shat[2 * k - 2]) <= odd_bound &&
             std::fabs(t.shat[2 * k - 1]) <= odd_bound * (1 + u);
      checked += 2;
    }
  }
  return {pass, std::to_string(checked) + " partial sums over 100 traces"};
}

ExperimentConfig mixed_config(Experiment e) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  cfg.n_grid = make_grid(GridKind::LinearSteps, 10, 1000000);
  cfg.delta = 1e-16;
  cfg.families = {Family::MixedSign};
  cfg.seeds = {1, 2, 3};
  return cfg;
}

Outcome no_violation_regime() {
  const BoundId watched[] = {BoundId::ProbPerturb, BoundId::ProbIndep, BoundId::ProbMart,
                             BoundId::CompactUpper, BoundId::SimplestProb};
  std::size_t cells = 0;
  std::size_t violations = 0;
  for (Experiment e :
       {Experiment::Perturbation, Experiment::RoundoffIndep, Experiment::RoundoffGeneral}) {
    for (const auto& rec : run_sweep(mixed_config(e))) {
      ++cells;
      for (BoundId b : watched) violations += rec.report.is_violated(b) ? 1 : 0;
    }
  }
  return {violations == 0 && cells > 0,
          std::to_string(violations) + " violations in " + std::to_string(cells) + " cells"};
}

Outcome violation_phenomenon() {
  const std::uint64_t seeds[] = {1, 2, 3};
  const auto scan = violation_scan(Family::SameSign, kDelta16, kSingle, 10000000, seeds);
  // Verdict per sort order: every seed shows both bounds failing somewhere.
  bool verdict[3] = {true, true, true};
  std::size_t earliest = SIZE_MAX;
  std::size_t latest = 0;
  bool onset_ok = true;
  for (const auto& e : scan.entries) {
    if (e.bound != BoundId::ProbIndep && e.bound != BoundId::ProbMart) continue;
    const auto o = static_cast<int>(e.order);
    if (!e.first_violation) {
      verdict[o] = false;
      continue;
    }
    earliest = std::min(earliest, *e.first_violation);
    latest = std::max(latest, *e.first_violation);
    onset_ok = onset_ok && *e.first_violation >= 100000 && *e.first_violation <= 10000000;
  }
  const bool pass = verdict[0] && verdict[1] && verdict[2] && onset_ok;
  std::ostringstream d;
  d << "violations in none/asc/desc: " << verdict[0] << "/" << verdict[1] << "/" << verdict[2]
    << ", first violation n in [" << (earliest == SIZE_MAX ? 0 : earliest) << ", " << latest
    << "]";
  return {pass, d.str()};
}

Outcome azuma() {
  const auto coeffs = parse_coeff_spec("equal:100");
  const FailureProbability delta(0.05);
  const std::size_t trials = 100000;
  const auto r = azuma_monte_carlo(coeffs, delta, trials, 1);
  const double allowed = 0.05 + 3.0 * std::sqrt(0.05 / trials);
  std::ostringstream d;
  d << "rate=" << r.rate << " allowed=" << allowed;
  return {r.rate <= allowed, d.str()};
}

Outcome wilkinson() {
  const double u = 0x1p-24;
  const UnitRoundoff uu(u);
  const double n = 1e6;
  const double a = std::sqrt(u * gamma(2000000, uu) / 2) / (std::sqrt(n) * u);
  const double b = gamma(1000000, uu) / (n * u);
  std::ostringstream d;
  d << "sqrt(u gamma_2n / 2)/(sqrt(n) u)=" << a << ", gamma_n/(n u)=" << b;
  return {a >= 0.95 && a <= 1.05 && b >= 1.0 && b <= 1.05, d.str()};
}

Outcome determinism() {
  auto cfg = mixed_config(Experiment::RoundoffGeneral);
  cfg.n_grid = make_grid(GridKind::Geometric, 10, 1000000);
  const std::string a = sweep_csv(run_sweep(cfg));
  const std::string b = sweep_csv(run_sweep(cfg));
  return {a == b && !a.empty(), std::to_string(a.size()) + " bytes per run"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"crossover dimensions", crossovers},
      {"probabilistic factor", factor},
      {"tightness ratio", tightness_ratio},
      {"recursion exactness", recursion_exactness},
      {"brute-force dominance", brute_force},
      {"partial-sum bounds", partial_sum_bounds},
      {"no-violation regime", no_violation_regime},
      {"violation phenomenon", violation_phenomenon},
      {"azuma monte carlo", azuma},
      {"wilkinson scaling", wilkinson},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %-22s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", index, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
