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

#include "dotbounds/report_io.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "dotbounds/generators.hpp"
#include "dotbounds/rng.hpp"

namespace dotbounds {
namespace {

constexpr std::string_view kToolVersion = "0.1.0";

template <typename E, typename Parse>
E parse_or_throw(const nlohmann::json& j, std::string_view key, Parse parse) {
  const std::string name = j.at(std::string(key)).get<std::string>();
  const auto v = parse(name);
  if (!v) throw InvalidArgument("unknown " + std::string(key) + " '" + name + "'");
  return *v;
}

std::optional<WorkingPrecision> parse_working(std::string_view s) {
  if (s == "binary32") return WorkingPrecision::Binary32;
  if (s == "binary64") return WorkingPrecision::Binary64;
  return std::nullopt;
}

std::optional<OraclePrecision> parse_oracle(std::string_view s) {
  if (s == "binary64") return OraclePrecision::Binary64;
  if (s == "double-double") return OraclePrecision::DoubleDouble;
  return std::nullopt;
}

}  // namespace

std::string violation_flags(const SweepRecord& record) {
  if (record.zero_inner_product) return "zero_inner_product";
  std::string flags;
  for (BoundId id : bounds_for(record.report.error_kind)) {
    if (!record.report.is_violated(id)) continue;
    if (!flags.empty()) flags += ';';
    flags += to_string(id);
  }
  return flags.empty() ? "none" : flags;
}

std::string sweep_csv(std::span<const SweepRecord> records) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& rec : records) {
    const BoundReport& r = rec.report;
    out += to_string(rec.experiment);
    out += ',';
    out += to_string(rec.family);
    out += ',' + std::to_string(rec.seed);
    out += ',' + std::to_string(rec.n);
    for (double v : {r.empirical_rel_error, r.kappa1, r.kappa2, r.kappa_inf,
                     r.det_perturb_p2, r.prob_perturb, r.det_trad, r.det_indep,
                     r.prob_indep, r.det_martingale, r.prob_martingale,
                     r.simplest_prob}) {
      out += ',';
      out += format_exact(v);
    }
    out += ',';
    out += violation_flags(rec);
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["exact_inner_product"] = r.exact;
  j["empirical_rel_error"] = r.empirical_rel_error;
  j["kappa1"] = r.kappa1;
  j["kappa2"] = r.kappa2;
  j["kappa_inf"] = r.kappa_inf;
  j["det_perturb"] = r.det_perturb_p2;
  j["prob_perturb"] = r.prob_perturb;
  j["det_trad"] = r.det_trad;
  j["det_indep"] = r.det_indep;
  j["prob_indep"] = r.prob_indep;
  j["det_mart"] = r.det_martingale;
  j["prob_mart"] = r.prob_martingale;
  j["compact_upper"] = r.compact_upper;
  j["simplest_prob"] = r.simplest_prob;
  nlohmann::ordered_json violated = nlohmann::ordered_json::object();
  for (BoundId id : bounds_for(r.error_kind)) {
    violated[std::string(to_string(id))] = r.is_violated(id);
  }
  j["violated"] = violated;
  return j;
}

nlohmann::ordered_json to_json(const SweepRecord& rec) {
  nlohmann::ordered_json j;
  j["experiment"] = to_string(rec.experiment);
  j["family"] = to_string(rec.family);
  j["seed"] = rec.seed;
  j["sort"] = to_string(rec.order);
  j["zero_inner_product"] = rec.zero_inner_product;
  j["report"] = to_json(rec.report);
  return j;
}

std::string sweep_jsonl(std::span<const SweepRecord> records) {
  std::string out;
  for (const auto& rec : records) {
    out += to_json(rec).dump();
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["experiment"] = to_string(cfg.experiment);
  j["n_grid"] = cfg.n_grid;
  j["delta"] = cfg.delta;
  j["working"] = to_string(cfg.prec.working());
  j["oracle"] = to_string(cfg.prec.oracle());
  if (cfg.u) {
    j["u"] = *cfg.u;
  } else {
    j["u"] = nullptr;
  }
  nlohmann::ordered_json families = nlohmann::ordered_json::array();
  for (Family f : cfg.families) families.push_back(to_string(f));
  j["families"] = families;
  j["seeds"] = cfg.seeds;
  j["trials"] = cfg.trials;
  j["dist"] = to_string(cfg.dist);
  j["sort"] = to_string(cfg.sort);
  j["fresh_draws"] = cfg.fresh_draws;
  j["coeffs"] = cfg.coeffs;
  j["out_path"] = cfg.out_path;
  j["rng"] = kRngAlgorithm;
  j["version"] = kToolVersion;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  try {
    ExperimentConfig cfg;
    cfg.experiment = parse_or_throw<Experiment>(j, "experiment", parse_experiment);
    cfg.n_grid = j.at("n_grid").get<std::vector<std::size_t>>();
    cfg.delta = j.at("delta").get<double>();
    cfg.prec = PrecisionSpec(
        parse_or_throw<WorkingPrecision>(j, "working", parse_working),
        parse_or_throw<OraclePrecision>(j, "oracle", parse_oracle));
    if (j.contains("u") && !j.at("u").is_null()) cfg.u = j.at("u").get<double>();
    cfg.families.clear();
    for (const auto& f : j.at("families")) {
      const auto fam = parse_family(f.get<std::string>());
      if (!fam) throw InvalidArgument("unknown family '" + f.get<std::string>() + "'");
      cfg.families.push_back(*fam);
    }
    cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    cfg.trials = j.at("trials").get<std::size_t>();
    cfg.dist = parse_or_throw<PerturbationDist>(j, "dist", parse_dist);
    cfg.sort = parse_or_throw<SortOrder>(j, "sort", parse_sort);
    cfg.fresh_draws = j.at("fresh_draws").get<bool>();
    cfg.coeffs = j.value("coeffs", std::string());
    cfg.out_path = j.value("out_path", std::string());
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
}

std::string trace_csv(const RoundoffTrace& t) {
  if (!t.has_steps()) throw InvalidArgument("trace has no per-step data");
  std::string out = "k,shat,s_exact,delta,z\n";
  for (std::size_t i = 0; i < t.shat.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',' + format_exact(t.shat[i]);
    out += ',' + format_exact(t.s_exact[i]);
    out += ',';
    if (i < t.deltas.size()) out += format_exact(t.deltas[i]);
    out += ',' + format_exact(t.z[i]);
    out += '\n';
  }
  return out;
}

std::string scan_csv(const ScanResult& scan) {
  std::string out = "family,seed,sort,bound,first_violation_n\n";
  for (const auto& e : scan.entries) {
    out += to_string(scan.family);
    out += ',' + std::to_string(e.seed);
    out += ',';
    out += to_string(e.order);
    out += ',';
    out += to_string(e.bound);
    out += ',';
    out += e.first_violation ? std::to_string(*e.first_violation) : "none";
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot rename onto '" + path.string() + "'");
  }
}

}  // namespace dotbounds
