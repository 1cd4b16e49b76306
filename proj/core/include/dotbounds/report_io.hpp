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

// Serialization of reports, sweeps, scans and traces.
//
// Decimal output is shortest round-trip exact, so identical inputs give
// byte-identical files.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dotbounds/bounds.hpp"
#include "dotbounds/experiments.hpp"
#include "dotbounds/fpsim.hpp"

namespace dotbounds {

inline constexpr std::string_view kSweepCsvHeader =
    "experiment,family,seed,n,emp_err,kappa1,kappa2,kappa_inf,det_perturb,"
    "prob_perturb,det_trad,det_indep,prob_indep,det_mart,prob_mart,"
    "simplest_prob,viol_flags";

/// Violated bound names joined by ';', "none", or "zero_inner_product".
std::string violation_flags(const SweepRecord& record);

std::string sweep_csv(std::span<const SweepRecord> records);
std::string sweep_jsonl(std::span<const SweepRecord> records);

nlohmann::ordered_json to_json(const BoundReport& report);
nlohmann::ordered_json to_json(const SweepRecord& record);

/// Full config plus provenance (RNG algorithm, tool version).
nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);
/// Inverse of config_to_json; throws InvalidArgument on unknown values.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Per-step trace: k, shat, s_exact, delta, z. Row k carries delta_k; the
/// final row has an empty delta. Requires a TraceMode::Full trace.
std::string trace_csv(const RoundoffTrace& trace);

/// family, seed, sort, bound, first_violation_n ("none" when not found).
std::string scan_csv(const ScanResult& scan);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace dotbounds
