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

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "dotbounds/bounds.hpp"
#include "dotbounds/experiments.hpp"
#include "dotbounds/fpsim.hpp"
#include "dotbounds/generators.hpp"

namespace {

using namespace dotbounds;

const UnitRoundoff kU32 = UnitRoundoff::binary32();
const FailureProbability kDelta(1e-16);

void BM_Gamma(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gamma(n, kU32));
}
BENCHMARK(BM_Gamma)->Arg(1000)->Arg(10000000);

void BM_ProductSummary(benchmark::State& state) {
  const auto p = generate(Family::MixedSign, state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ProductSummary::of(p.x, p.y));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProductSummary)->Range(1 << 10, 1 << 20);

void BM_MartingaleCoeffs(benchmark::State& state) {
  const auto p = generate(Family::MixedSign, state.range(0), 1);
  const auto s = ProductSummary::of(p.x, p.y);
  for (auto _ : state) benchmark::DoNotOptimize(coeffs_martingale(s, kU32));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MartingaleCoeffs)->Range(1 << 10, 1 << 20);

void BM_EvaluateBounds(benchmark::State& state) {
  const auto p = generate(Family::MixedSign, state.range(0), 1);
  const auto s = ProductSummary::of(p.x, p.y);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_bounds(s, kU32, kDelta));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluateBounds)->Range(1 << 10, 1 << 20);

void BM_ExactDot(benchmark::State& state) {
  const auto p = generate(Family::MixedSign, state.range(0), 1);
  const auto oracle = static_cast<OraclePrecision>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(exact_inner_product(p.x, p.y, oracle));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExactDot)->ArgsProduct({{1 << 16, 1 << 20}, {0, 1}});

void BM_Accumulate(benchmark::State& state) {
  const auto p = generate(Family::MixedSign, state.range(0), 1);
  const PrecisionSpec prec;
  const auto mode = static_cast<TraceMode>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(accumulate(p.x, p.y, prec, mode));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Accumulate)->ArgsProduct({{1 << 16, 1 << 20}, {0, 1}});

void BM_PlainDot(benchmark::State& state) {
  const auto p = generate(Family::MixedSign, state.range(0), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(plain_working_dot(p.x, p.y, WorkingPrecision::Binary32));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PlainDot)->Range(1 << 16, 1 << 20);

void BM_Generate(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(generate(Family::MixedSign, state.range(0), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Range(1 << 16, 1 << 20);

void BM_SweepCell(benchmark::State& state) {
  const auto p = generate(Family::MixedSign, state.range(0), 1);
  const ExperimentConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_cell(Experiment::RoundoffGeneral, p, p.x, p.y, cfg));
  }
}
BENCHMARK(BM_SweepCell)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
