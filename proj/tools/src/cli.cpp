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

#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dotbounds/bounds.hpp"
#include "dotbounds/experiments.hpp"
#include "dotbounds/fpsim.hpp"
#include "dotbounds/generators.hpp"
#include "dotbounds/report_io.hpp"
#include "dotbounds/rng.hpp"

namespace dotbounds::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text, const std::string& what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size() || !std::isfinite(v)) {
    throw UsageError(what + ": not a number: '" + text + "'");
  }
  return v;
}

// Accepts plain integers and scientific notation such as 1e6.
std::size_t parse_dimension(const std::string& text, const std::string& what) {
  const double v = parse_real(text, what);
  if (v < 1 || v > 0x1p53 || std::floor(v) != v) {
    throw UsageError(what + ": expected a positive integer, got '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    std::uint64_t s = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), s);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError("--seed-list: bad seed '" + std::string(item) + "'");
    }
    seeds.push_back(s);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (seeds.empty()) throw UsageError("--seed-list: no seeds given");
  return seeds;
}

struct PrecisionOpts {
  std::string working = "binary32";
  std::string oracle = "auto";

  PrecisionSpec spec() const {
    const WorkingPrecision w =
        working == "binary64" ? WorkingPrecision::Binary64 : WorkingPrecision::Binary32;
    if (oracle == "auto") return PrecisionSpec::with_default_oracle(w);
    const OraclePrecision o =
        oracle == "double-double" ? OraclePrecision::DoubleDouble : OraclePrecision::Binary64;
    try {
      return PrecisionSpec(w, o);
    } catch (const InvalidArgument& e) {
      throw UsageError(std::string("--oracle: ") + e.what());
    }
  }

  void add_to(CLI::App* app) {
    app->add_option("--precision", working, "Working precision of the simulated dot product")
        ->check(CLI::IsMember({"binary32", "binary64"}))
        ->capture_default_str();
    app->add_option("--oracle", oracle,
                    "Exact-reference precision; auto picks binary64 for binary32 and "
                    "double-double for binary64")
        ->check(CLI::IsMember({"auto", "binary64", "double-double"}))
        ->capture_default_str();
  }
};

struct BoundOpts {
  std::string delta = "1e-16";
  std::string u;

  double delta_value() const { return parse_real(delta, "--delta"); }
  std::optional<double> u_value() const {
    if (u.empty()) return std::nullopt;
    return parse_real(u, "--u");
  }

  void add_to(CLI::App* app, bool with_u = true) {
    app->add_option("--delta", delta, "Failure probability of the probabilistic bounds")
        ->capture_default_str();
    if (with_u) {
      app->add_option("--u", u,
                      "Unit roundoff used in the bounds (default: that of --precision)");
    }
  }
};

struct SeedOpts {
  std::size_t count = 3;
  std::string list;
  CLI::Option* count_opt = nullptr;
  CLI::Option* list_opt = nullptr;

  std::vector<std::uint64_t> seeds() const {
    if (!list.empty()) return parse_seed_list(list);
    if (count < 1) throw UsageError("--seeds must be >= 1");
    std::vector<std::uint64_t> s(count);
    for (std::size_t i = 0; i < count; ++i) s[i] = i + 1;
    return s;
  }

  void add_to(CLI::App* app) {
    count_opt = app->add_option("--seeds", count, "Number of seeds; uses seeds 1..N")
                    ->capture_default_str();
    list_opt = app->add_option("--seed-list", list, "Explicit comma-separated seeds")
                   ->excludes(count_opt);
  }
};

// Where a file output goes: -o wins, then the output directory variable,
// otherwise stdout.
std::optional<fs::path> resolve_output(const std::string& out, const std::string& name) {
  if (!out.empty()) return fs::path(out);
  if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
    return fs::path(dir) / name;
  }
  return std::nullopt;
}

void emit(const std::optional<fs::path>& path, const std::string& content, std::ostream& out) {
  if (path) {
    write_file_atomic(*path, content);
  } else {
    out << content;
  }
}

fs::path sidecar_path(const fs::path& p) {
  fs::path s = p;
  s += ".json";
  return s;
}

VectorPair load_pair(const std::string& input, const std::string& family, const std::string& n,
                     std::uint64_t seed, WorkingPrecision working) {
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) throw Error("cannot read '" + input + "'");
    VectorPair p = read_pair_csv(in);
    p.working = working;
    return p;
  }
  const auto f = parse_family(family);
  if (!f) throw UsageError("--family: unknown family '" + family + "'");
  return generate(*f, parse_dimension(n, "--n"), seed, working);
}

std::string sci(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream s;
  s << std::setprecision(6) << std::scientific << v;
  return s.str();
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

struct Crossover {
  const char* model;
  const char* relation;
  bool tighter;
};

std::vector<Crossover> crossovers(const BoundReport& r) {
  return {
      {"perturbation", "prob_perturb < det_perturb", r.prob_perturb < r.det_perturb_p2},
      {"independent", "prob_indep < det_indep", r.prob_indep < r.det_indep},
      {"martingale", "prob_mart < det_mart", r.prob_martingale < r.det_martingale},
      {"general", "simplest_prob < det_trad", r.simplest_prob < r.det_trad},
  };
}

// ---- report ---------------------------------------------------------------

struct ReportCmd {
  std::string family = "mixed";
  std::string n = "1000";
  std::uint64_t seed = 1;
  std::string input;
  std::string format = "text";
  std::string out;
  PrecisionOpts prec;
  BoundOpts bounds;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand("report", "Evaluate every bound for one vector pair");
    auto* fam = sub->add_option("--family", family,
                                "Generator family: mixed, same, uniform, equal, alternating")
                    ->capture_default_str();
    auto* nopt = sub->add_option("--n", n, "Dimension (scientific notation accepted)")
                     ->capture_default_str();
    auto* sopt = sub->add_option("--seed", seed, "Generator seed")->capture_default_str();
    sub->add_option("--input", input, "CSV file with two columns x,y instead of a generator")
        ->check(CLI::ExistingFile)
        ->excludes(fam)
        ->excludes(nopt)
        ->excludes(sopt);
    bounds.add_to(sub);
    prec.add_to(sub);
    sub->add_option("--format", format, "Console output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("-o,--out", out, "Also write the JSON report to this file");
  }

  int run(std::ostream& out_stream) const {
    const PrecisionSpec spec = prec.spec();
    const VectorPair pair = load_pair(input, family, n, seed, spec.working());
    if (pair.x.size() != pair.y.size()) throw LengthMismatch(pair.x.size(), pair.y.size());
    const FailureProbability delta(bounds.delta_value());
    const UnitRoundoff u = bounds.u_value() ? UnitRoundoff(*bounds.u_value())
                                            : spec.unit_roundoff();

    const ProductSummary summary = ProductSummary::of(pair.x, pair.y, spec.oracle());
    BoundReport r = evaluate_bounds(summary, u, delta);
    const RoundoffTrace trace = accumulate(pair.x, pair.y, spec, TraceMode::FinalOnly);
    record_error(r, std::fabs(trace.error) / std::fabs(trace.exact), ErrorKind::Roundoff);

    ordered_json j;
    if (input.empty()) {
      j["source"] = {{"family", to_string(pair.family)}, {"n", pair.n()}, {"seed", seed}};
    } else {
      j["source"] = {{"input", input}, {"n", pair.n()}};
    }
    j["working"] = to_string(spec.working());
    j["oracle"] = to_string(spec.oracle());
    j["u"] = u.value();
    j["delta"] = delta.value();
    j["computed"] = trace.result;
    j["report"] = to_json(r);
    ordered_json cx = ordered_json::object();
    for (const auto& c : crossovers(r)) cx[c.model] = c.tighter;
    j["probabilistic_tighter"] = cx;
    j["version"] = "0.1.0";

    if (!out.empty()) write_file_atomic(out, j.dump(2) + "\n");
    if (format == "json") {
      out_stream << j.dump(2) << "\n";
      return kExitOk;
    }

    auto row = [&](const std::string& label, const std::string& value) {
      out_stream << "  " << std::left << std::setw(20) << label << value << "\n";
    };
    out_stream << "instance\n";
    if (input.empty()) {
      row("source", std::string(to_string(pair.family)) + " n=" + std::to_string(pair.n()) +
                        " seed=" + std::to_string(seed));
    } else {
      row("source", input + " n=" + std::to_string(pair.n()));
    }
    row("working", std::string(to_string(spec.working())) + " (u = " + sci(u.value()) + ")");
    row("oracle", std::string(to_string(spec.oracle())));
    row("delta", sci(delta.value()) + " (factor " + sci(delta.factor()) + ")");
    row("exact", format_exact(r.exact));
    row("computed", format_exact(trace.result));
    row("empirical error", sci(r.empirical_rel_error));

    out_stream << "amplifiers\n";
    row("kappa1", sci(r.kappa1));
    row("kappa2", sci(r.kappa2));
    row("kappa_inf", sci(r.kappa_inf));

    out_stream << "bounds               value         below error\n";
    for (std::size_t i = 0; i < kBoundCount; ++i) {
      const auto id = static_cast<BoundId>(i);
      const bool perturb = id == BoundId::DetPerturb || id == BoundId::ProbPerturb;
      std::ostringstream v;
      v << std::left << std::setw(14) << sci(r.value(id))
        << (perturb ? "n/a" : yes_no(r.is_violated(id)));
      row(std::string(to_string(id)), v.str());
    }

    out_stream << "probabilistic tighter than deterministic\n";
    for (const auto& c : crossovers(r)) {
      std::ostringstream v;
      v << std::left << std::setw(28) << c.relation << yes_no(c.tighter);
      row(c.model, v.str());
    }
    return kExitOk;
  }
};

// ---- sweep ----------------------------------------------------------------

struct SweepCmd {
  std::string experiment = "roundoff-general";
  std::vector<std::string> families{"mixed"};
  std::string dist = "uniform";
  std::string n_min = "10";
  std::string n_max = "1e6";
  std::string grid = "geometric";
  std::string sort = "none";
  bool fresh = false;
  std::string format = "csv";
  std::string out;
  std::string config;
  unsigned threads = 0;
  PrecisionOpts prec;
  BoundOpts bounds;
  SeedOpts seeds;
  CLI::App* sub = nullptr;

  void add(CLI::App& app) {
    sub = app.add_subcommand("sweep", "Run a dimension sweep and write one row per cell");
    sub->add_option("--experiment", experiment, "Sweep to run")
        ->check(CLI::IsMember({"amplifiers", "perturbation", "roundoff-indep", "roundoff-general"}))
        ->capture_default_str();
    sub->add_option("--family", families,
                    "Generator families, repeatable or comma-separated: mixed, same, "
                    "uniform, equal, alternating")
        ->delimiter(',')
        ->capture_default_str();
    sub->add_option("--dist", dist, "Perturbation distribution (perturbation sweep)")
        ->check(CLI::IsMember({"uniform", "two-point"}))
        ->capture_default_str();
    sub->add_option("--n-min", n_min, "Smallest dimension")->capture_default_str();
    sub->add_option("--n-max", n_max, "Largest dimension (scientific notation accepted)")
        ->capture_default_str();
    sub->add_option("--grid", grid,
                    "geometric: n-min times powers of 10; linear-steps: n-min then "
                    "multiples of n-max/100")
        ->check(CLI::IsMember({"geometric", "linear-steps"}))
        ->capture_default_str();
    bounds.add_to(sub);
    prec.add_to(sub);
    seeds.add_to(sub);
    sub->add_option("--sort", sort, "Reorder each prefix by |x_k y_k| before accumulating")
        ->check(CLI::IsMember({"none", "asc", "desc"}))
        ->capture_default_str();
    sub->add_flag("--fresh-draws", fresh,
                  "Draw new vectors per dimension instead of prefixes of one draw");
    sub->add_option("--threads", threads, "Worker threads, 0 for all cores")
        ->capture_default_str();
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
    sub->add_option("-o,--out", out,
                    std::string("Output file; a .json config sidecar is written next to it "
                                "(default: $") + kOutputDirEnv + "/<experiment>.<format>, "
                                "else stdout)");
    sub->add_option("--config", config,
                    "Rerun from a config sidecar; experiment flags are then rejected")
        ->check(CLI::ExistingFile);
  }

  ExperimentConfig build() const {
    if (!config.empty()) {
      for (const char* name :
           {"--experiment", "--family", "--dist", "--n-min", "--n-max", "--grid", "--delta",
            "--u", "--precision", "--oracle", "--seeds", "--seed-list", "--sort",
            "--fresh-draws"}) {
        if (sub->count(name) > 0) {
          throw UsageError(std::string(name) + " cannot be combined with --config");
        }
      }
      std::ifstream in(config);
      if (!in) throw Error("cannot read '" + config + "'");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError("--config: " + std::string(e.what()));
      }
      ExperimentConfig cfg = config_from_json(j);
      cfg.threads = threads;
      if (!out.empty()) cfg.out_path = out;
      return cfg;
    }
    ExperimentConfig cfg;
    cfg.experiment = *parse_experiment(experiment);
    const std::size_t lo = parse_dimension(n_min, "--n-min");
    const std::size_t hi = parse_dimension(n_max, "--n-max");
    if (hi < lo) throw UsageError("--n-max must be >= --n-min");
    cfg.n_grid = make_grid(*parse_grid(grid), lo, hi);
    cfg.delta = bounds.delta_value();
    cfg.u = bounds.u_value();
    cfg.prec = prec.spec();
    cfg.families.clear();
    for (const auto& name : families) {
      const auto f = parse_family(name);
      if (!f) throw UsageError("--family: unknown family '" + name + "'");
      cfg.families.push_back(*f);
    }
    cfg.seeds = seeds.seeds();
    cfg.dist = *parse_dist(dist);
    cfg.sort = *parse_sort(sort);
    cfg.fresh_draws = fresh;
    cfg.out_path = out;
    cfg.threads = threads;
    return cfg;
  }

  int run(std::ostream& out_stream, std::ostream& err) const {
    ExperimentConfig cfg = build();
    try {
      cfg.validate();
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    const auto records = run_sweep(cfg);
    const std::string body = format == "jsonl" ? sweep_jsonl(records) : sweep_csv(records);
    const auto path = resolve_output(cfg.out_path,
                                     std::string(to_string(cfg.experiment)) + "." + format);
    emit(path, body, out_stream);
    if (path) {
      cfg.out_path = path->string();
      write_file_atomic(sidecar_path(*path), config_to_json(cfg).dump(2) + "\n");
      std::size_t violations = 0;
      for (const auto& r : records) violations += r.report.violated != 0;
      err << "wrote " << records.size() << " rows to " << path->string() << " ("
          << violations << " with a probabilistic bound below the error)\n";
    }
    return kExitOk;
  }
};

// ---- scan -----------------------------------------------------------------

struct ScanCmd {
  std::string family = "same";
  std::string n_min = "10";
  std::string n_max = "1e6";
  unsigned threads = 0;
  std::string out;
  std::string rows;
  PrecisionOpts prec;
  BoundOpts bounds;
  SeedOpts seeds;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "scan", "Find the first dimension where each probabilistic bound falls below the error");
    sub->add_option("--family", family, "Generator family")->capture_default_str();
    sub->add_option("--n-min", n_min, "Smallest dimension of the 1-2-5 grid")
        ->capture_default_str();
    sub->add_option("--n-max", n_max, "Largest dimension (scientific notation accepted)")
        ->capture_default_str();
    bounds.add_to(sub, false);
    prec.add_to(sub);
    seeds.add_to(sub);
    sub->add_option("--threads", threads, "Worker threads, 0 for all cores")
        ->capture_default_str();
    sub->add_option("-o,--out", out,
                    std::string("First-violation table (default: $") + kOutputDirEnv +
                        "/scan.csv, else stdout)");
    sub->add_option("--rows", rows, "Also write every evaluated cell in sweep CSV layout");
  }

  int run(std::ostream& out_stream, std::ostream& err) const {
    const auto f = parse_family(family);
    if (!f) throw UsageError("--family: unknown family '" + family + "'");
    const std::size_t lo = parse_dimension(n_min, "--n-min");
    const std::size_t hi = parse_dimension(n_max, "--n-max");
    if (hi < lo) throw UsageError("--n-max must be >= --n-min");
    const PrecisionSpec spec = prec.spec();
    const auto seed_list = seeds.seeds();
    const FailureProbability delta(bounds.delta_value());
    const ScanResult scan = violation_scan(*f, delta, spec, hi, seed_list, lo, threads);

    const auto path = resolve_output(out, "scan.csv");
    emit(path, scan_csv(scan), out_stream);
    if (!rows.empty()) write_file_atomic(rows, sweep_csv(scan.rows));
    if (path) {
      ordered_json j;
      j["experiment"] = "scan";
      j["family"] = to_string(*f);
      j["n_min"] = lo;
      j["n_max"] = hi;
      j["grid"] = scan.grid;
      j["delta"] = delta.value();
      j["working"] = to_string(spec.working());
      j["oracle"] = to_string(spec.oracle());
      j["seeds"] = seed_list;
      j["rng"] = kRngAlgorithm;
      j["version"] = "0.1.0";
      write_file_atomic(sidecar_path(*path), j.dump(2) + "\n");
      for (const auto& e : scan.entries) {
        if (e.order != SortOrder::None) continue;
        err << "seed " << e.seed << " " << to_string(e.bound) << ": "
            << (e.first_violation ? "first below error at n=" + std::to_string(*e.first_violation)
                                  : std::string("holds on the whole grid"))
            << "\n";
      }
    }
    return kExitOk;
  }
};

// ---- azuma ----------------------------------------------------------------

struct AzumaCmd {
  std::string coeffs = "equal:100";
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string out;
  BoundOpts bounds;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "azuma", "Monte-Carlo check of the Azuma tail for Rademacher sums of coefficients");
    sub->add_option("--coeffs", coeffs, "Coefficients: equal:N or a comma-separated list")
        ->capture_default_str();
    bounds.add_to(sub, false);
    sub->add_option("--trials", trials, "Number of Monte-Carlo sums")->capture_default_str();
    sub->add_option("--seed", seed, "Random seed")->capture_default_str();
    sub->add_option("--format", format, "Console output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("-o,--out", out, "Also write the JSON result to this file");
  }

  int run(std::ostream& out_stream) const {
    std::vector<double> c;
    try {
      c = parse_coeff_spec(coeffs);
    } catch (const InvalidArgument& e) {
      throw UsageError(std::string("--coeffs: ") + e.what());
    }
    if (trials < 1) throw UsageError("--trials must be >= 1");
    const FailureProbability delta(bounds.delta_value());
    const AzumaResult r = azuma_monte_carlo(c, delta, trials, seed);
    const bool ok = r.rate <= r.allowed_rate;

    ordered_json j;
    j["coefficients"] = c.size();
    j["delta"] = delta.value();
    j["trials"] = r.trials;
    j["seed"] = seed;
    j["threshold"] = r.threshold;
    j["violations"] = r.violations;
    j["rate"] = r.rate;
    j["allowed_rate"] = r.allowed_rate;
    j["within_allowed"] = ok;
    j["rng"] = kRngAlgorithm;
    if (!out.empty()) write_file_atomic(out, j.dump(2) + "\n");
    if (format == "json") {
      out_stream << j.dump(2) << "\n";
    } else {
      out_stream << "coefficients  " << c.size() << "\n"
                 << "delta         " << sci(delta.value()) << "\n"
                 << "threshold     " << sci(r.threshold) << "\n"
                 << "trials        " << r.trials << "\n"
                 << "violations    " << r.violations << "\n"
                 << "rate          " << sci(r.rate) << "\n"
                 << "allowed rate  " << sci(r.allowed_rate) << "\n"
                 << "within        " << yes_no(ok) << "\n";
    }
    return kExitOk;
  }
};

// ---- trace ----------------------------------------------------------------

struct TraceCmd {
  std::string family = "mixed";
  std::string n = "8";
  std::uint64_t seed = 1;
  std::string input;
  std::string out;
  PrecisionOpts prec;

  void add(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "trace", "Write the per-step partial sums, roundoffs and errors of one accumulation");
    auto* fam = sub->add_option("--family", family, "Generator family")->capture_default_str();
    auto* nopt = sub->add_option("--n", n, "Dimension")->capture_default_str();
    auto* sopt = sub->add_option("--seed", seed, "Generator seed")->capture_default_str();
    sub->add_option("--input", input, "CSV file with two columns x,y instead of a generator")
        ->check(CLI::ExistingFile)
        ->excludes(fam)
        ->excludes(nopt)
        ->excludes(sopt);
    prec.add_to(sub);
    sub->add_option("-o,--out", out,
                    std::string("Output CSV (default: $") + kOutputDirEnv +
                        "/trace.csv, else stdout)");
  }

  int run(std::ostream& out_stream) const {
    const PrecisionSpec spec = prec.spec();
    const VectorPair pair = load_pair(input, family, n, seed, spec.working());
    const RoundoffTrace t = accumulate(pair.x, pair.y, spec);
    emit(resolve_output(out, "trace.csv"), trace_csv(t), out_stream);
    return kExitOk;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic and probabilistic roundoff bounds for inner products",
               "dotbounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dotbounds 0.1.0");
  app.footer(std::string("Exit codes: 0 success, 1 usage error, 2 runtime error.\n"
                         "Environment: ") +
             kOutputDirEnv + " sets the directory for outputs written without -o.");

  ReportCmd report;
  SweepCmd sweep;
  ScanCmd scan;
  AzumaCmd azuma;
  TraceCmd trace;
  report.add(app);
  sweep.add(app);
  scan.add(app);
  azuma.add(app);
  trace.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("report")) return report.run(out);
    if (app.got_subcommand("sweep")) return sweep.run(out, err);
    if (app.got_subcommand("scan")) return scan.run(out, err);
    if (app.got_subcommand("azuma")) return azuma.run(out);
    if (app.got_subcommand("trace")) return trace.run(out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace dotbounds::cli
