// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface: distribution inspection, partition ANOVA runs,
// vaccine and endpoint analyses, and uncertainty-curve emission.
//
// Exit codes: 0 success, 2 parse/usage error, 3 semantic validation error.
// Diagnostics go to stderr, results to stdout or --out.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmsa/rmsa.hpp"

namespace {

using Json = nlohmann::ordered_json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw rmsa::ParseError("cannot open input file \"" + path + "\"");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw rmsa::ParseError("cannot open output file \"" + out_path + "\"");
  }
  out << payload;
}

struct DistOpts {
  std::string spec_path;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
};

std::string run_dist(const DistOpts& o) {
  const rmsa::CountingMeasure k = rmsa::counting_from_json(read_input(o.spec_path));
  const double mean = k.mean();
  const double variance = k.variance();
  const double defect = k.defect();
  const bool orthogonal = k.is_orthogonal();

  std::optional<std::pair<double, double>> empirical;
  if (o.samples > 0) {
    rmsa::RandomSource rng(o.seed);
    double m = 0.0, m2 = 0.0;
    for (std::int64_t i = 0; i < o.samples; ++i) {
      const double x = static_cast<double>(k.sample(rng));
      const double d = x - m;
      m += d / static_cast<double>(i + 1);
      m2 += d * (x - m);
    }
    empirical = {m, m2 / static_cast<double>(o.samples - 1)};
  }

  if (o.format == "csv") {
    std::string out = "key,value\n";
    out += "kind," + std::string(rmsa::kind_name(k.kind())) + "\n";
    out += "mean," + rmsa::format_double(mean) + "\n";
    out += "variance," + rmsa::format_double(variance) + "\n";
    out += "defect," + rmsa::format_double(defect) + "\n";
    out += std::string("orthogonal,") + (orthogonal ? "true" : "false") + "\n";
    if (empirical) {
      out += "samples," + std::to_string(o.samples) + "\n";
      out += "seed," + std::to_string(o.seed) + "\n";
      out += "empirical_mean," + rmsa::format_double(empirical->first) + "\n";
      out += "empirical_variance," + rmsa::format_double(empirical->second) + "\n";
    }
    return out;
  }

  Json j = Json::parse(rmsa::to_json(k));
  j["mean"] = mean;
  j["variance"] = variance;
  j["defect"] = defect;
  j["orthogonal"] = orthogonal;
  if (empirical) {
    j["empirical"] = {{"samples", o.samples},
                      {"seed", o.seed},
                      {"mean", empirical->first},
                      {"variance", empirical->second}};
  }
  return j.dump(2) + "\n";
}

struct AnovaOpts {
  std::string measure_path;
  std::string function_path;
  std::string partition_path;
  std::string format = "json";
  std::string out;
};

std::string run_anova(const AnovaOpts& o) {
  const rmsa::RandomMeasure n = rmsa::random_measure_from_json(read_input(o.measure_path));
  const rmsa::MeasurableFn f = rmsa::fn_from_json(read_input(o.function_path));
  const rmsa::Partition p = rmsa::partition_from_json(read_input(o.partition_path));

  const rmsa::AnovaDecomposition d = rmsa::anova_decompose(n, f, p);

  if (o.format == "csv") {
    return rmsa::sensitivity_csv(rmsa::sensitivity_indices(d));
  }

  Json j;
  j["decomposition"] = Json::parse(rmsa::to_json(d));
  if (d.degenerate) {
    j["indices"] = nullptr;
  } else {
    const rmsa::SensitivityReport r = rmsa::sensitivity_indices(d);
    j["indices"] = Json::parse(rmsa::to_json(r));
    if (r.defectiveness == rmsa::Defectiveness::None) {
      const rmsa::SensitivityMeasure s = rmsa::structural_measure(r);
      Json sensitivity;
      sensitivity["probs"] = Json::object();
      for (const auto& [cell, mass] : s.probs()) sensitivity["probs"][cell] = mass;
      sensitivity["entropy"] = rmsa::entropy(s);
      sensitivity["entropy_bits"] = rmsa::entropy(s, rmsa::EntropyBase::Binary);
      j["sensitivity"] = sensitivity;
    }
  }
  return j.dump(2) + "\n";
}

struct VaccineOpts {
  std::string trial_path;
  std::uint64_t seed = 0;
  std::int64_t reps = 10000;
  std::string out;
};

std::string run_vaccine(const VaccineOpts& o) {
  const rmsa::VaccineTrial trial = rmsa::vaccine_trial_from_json(read_input(o.trial_path));
  const rmsa::VaccineReport report = rmsa::analyze_vaccine_trial(trial, o.reps, o.seed);
  return rmsa::vaccine_report_json(report, o.seed, o.reps);
}

struct EndpointsOpts {
  std::string csv_path;
  std::vector<double> weights = {0.5, 0.5};
  std::string rule = "normal392";
  std::string out;
};

std::string run_endpoints(const EndpointsOpts& o) {
  const auto records = rmsa::endpoints_from_csv(read_input(o.csv_path));
  return rmsa::endpoints_table_csv(records, {o.weights[0], o.weights[1]},
                                   rmsa::dispersion_rule_from_name(o.rule));
}

struct CurveOpts {
  double step = 0.001;
  std::string mark;
  std::string format = "csv";
  std::string out;
};

double parse_mark(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const double num = std::stod(text.substr(0, slash));
      const double den = std::stod(text.substr(slash + 1));
      if (den == 0.0) throw rmsa::ParseError("--mark denominator is zero");
      return num / den;
    }
    return std::stod(text);
  } catch (const std::invalid_argument&) {
    throw rmsa::ParseError("cannot parse --mark value \"" + text + "\"");
  } catch (const std::out_of_range&) {
    throw rmsa::ParseError("cannot parse --mark value \"" + text + "\"");
  }
}

std::string run_curve(const CurveOpts& o) {
  auto rows = rmsa::uncertainty_curve(o.step);
  if (!o.mark.empty()) {
    const double p = parse_mark(o.mark);
    if (!(p >= 0.0 && p <= 1.0)) {
      throw rmsa::ValidationError("--mark must lie in [0, 1]");
    }
    const rmsa::CurveRow marked{p, 2.0 * std::min(p, 1.0 - p), rmsa::binary_entropy(p)};
    const auto pos = std::lower_bound(rows.begin(), rows.end(), p,
                                      [](const rmsa::CurveRow& r, double v) { return r.p < v; });
    rows.insert(pos, marked);
  }
  if (o.format == "json") {
    Json j;
    j["step"] = o.step;
    j["rows"] = Json::array();
    for (const auto& r : rows) j["rows"].push_back({{"p", r.p}, {"unc", r.unc}, {"h2", r.h2}});
    return j.dump(2) + "\n";
  }
  return rmsa::curve_csv(rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random counting measures, partition ANOVA, and trial sensitivity analysis"};
  app.set_version_flag("--version", "rmsa 0.1.0");
  app.require_subcommand(1);

  DistOpts dist;
  auto* dist_cmd = app.add_subcommand("dist", "inspect a counting distribution");
  dist_cmd->add_option("spec", dist.spec_path, "counting measure JSON file (- for stdin)")
      ->required();
  dist_cmd->add_option("--sample", dist.samples, "append empirical moments over this many draws")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{100000000}));
  dist_cmd->add_option("--seed", dist.seed, "random seed for --sample");
  dist_cmd->add_option("--format", dist.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  dist_cmd->add_option("--out", dist.out, "write output to this path instead of stdout");

  AnovaOpts anova;
  auto* anova_cmd = app.add_subcommand("anova", "variance decomposition over a partition");
  anova_cmd->add_option("--measure", anova.measure_path, "random measure JSON (kappa + nu)")
      ->required();
  anova_cmd->add_option("--function", anova.function_path, "function JSON (label -> value)")
      ->required();
  anova_cmd->add_option("--partition", anova.partition_path, "partition JSON (cell -> points)")
      ->required();
  anova_cmd->add_option("--format", anova.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  anova_cmd->add_option("--out", anova.out, "write output to this path instead of stdout");

  VaccineOpts vaccine;
  auto* vaccine_cmd = app.add_subcommand("vaccine", "vaccine efficacy and uncertainty report");
  vaccine_cmd->add_option("trial", vaccine.trial_path, "trial JSON file (- for stdin)")
      ->required();
  vaccine_cmd->add_option("--seed", vaccine.seed, "random seed for the CI simulation");
  vaccine_cmd->add_option("--reps", vaccine.reps, "simulation replicates")
      ->check(CLI::Range(std::int64_t{100}, std::int64_t{100000000}));
  vaccine_cmd->add_option("--out", vaccine.out, "write output to this path instead of stdout");

  EndpointsOpts endpoints;
  auto* endpoints_cmd =
      app.add_subcommand("endpoints", "sensitivity table for clinical endpoints");
  endpoints_cmd->add_option("csv", endpoints.csv_path, "endpoint CSV file (- for stdin)")
      ->required();
  endpoints_cmd
      ->add_option("--weights", endpoints.weights, "group weights (nu{T} nu{C})")
      ->expected(2);
  endpoints_cmd->add_option("--dispersion-rule", endpoints.rule, "CI-to-variance rule")
      ->check(CLI::IsMember({"normal392", "quarterwidth"}));
  endpoints_cmd->add_option("--out", endpoints.out, "write output to this path instead of stdout");

  CurveOpts curve;
  auto* curve_cmd = app.add_subcommand("curve", "emit the Unc/H2 comparison grid");
  curve_cmd->add_option("--step", curve.step, "grid step in (0, 0.5]")
      ->check(CLI::Range(1e-6, 0.5));
  curve_cmd->add_option("--mark", curve.mark, "insert a reference row at p (e.g. 77/81)");
  curve_cmd->add_option("--format", curve.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  curve_cmd->add_option("--out", curve.out, "write output to this path instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(dist_cmd)) {
      emit(run_dist(dist), dist.out);
    } else if (app.got_subcommand(anova_cmd)) {
      emit(run_anova(anova), anova.out);
    } else if (app.got_subcommand(vaccine_cmd)) {
      emit(run_vaccine(vaccine), vaccine.out);
    } else if (app.got_subcommand(endpoints_cmd)) {
      emit(run_endpoints(endpoints), endpoints.out);
    } else if (app.got_subcommand(curve_cmd)) {
      emit(run_curve(curve), curve.out);
    }
    return 0;
  } catch (const rmsa::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rmsa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
