// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsa/json_io.hpp"

#include <utility>

#include <json.hpp>

#include "rmsa/errors.hpp"

namespace rmsa {

namespace {

using Json = nlohmann::ordered_json;

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

void require_object(const Json& j, const char* what) {
  if (!j.is_object()) {
    throw ValidationError(std::string(what) + " must be a JSON object");
  }
}

const Json& require_key(const Json& j, const std::string& key, const char* what) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ValidationError(std::string(what) + " is missing required key \"" + key + "\"");
  }
  return *it;
}

double as_number(const Json& j, const std::string& key, const char* what) {
  const Json& v = require_key(j, key, what);
  if (!v.is_number()) {
    throw ValidationError(std::string(what) + " key \"" + key + "\" must be a number");
  }
  return v.get<double>();
}

std::int64_t as_integer(const Json& j, const std::string& key, const char* what) {
  const Json& v = require_key(j, key, what);
  if (!v.is_number_integer()) {
    throw ValidationError(std::string(what) + " key \"" + key + "\" must be an integer");
  }
  return v.get<std::int64_t>();
}

}  // namespace

CountingMeasure counting_from_json(const std::string& text) {
  const Json j = parse(text);
  require_object(j, "counting measure");
  const Json& kind = require_key(j, "kind", "counting measure");
  if (!kind.is_string()) {
    throw ValidationError("counting measure key \"kind\" must be a string");
  }
  const std::string name = kind.get<std::string>();
  if (name == "dirac") {
    return CountingMeasure::dirac(as_integer(j, "c", "dirac"));
  }
  if (name == "binomial") {
    return CountingMeasure::binomial(as_integer(j, "n", "binomial"),
                                     as_number(j, "p", "binomial"));
  }
  if (name == "poisson") {
    return CountingMeasure::poisson(as_number(j, "c", "poisson"));
  }
  if (name == "orthogonal_die") {
    return CountingMeasure::orthogonal_die(as_integer(j, "m", "orthogonal_die"),
                                           as_integer(j, "n", "orthogonal_die"));
  }
  if (name == "negative_binomial") {
    return CountingMeasure::negative_binomial(as_number(j, "r", "negative_binomial"),
                                              as_number(j, "p", "negative_binomial"));
  }
  if (name == "zeta") {
    return CountingMeasure::zeta(as_number(j, "s", "zeta"));
  }
  throw ValidationError("unknown counting kind \"" + name + "\"");
}

std::string to_json(const CountingMeasure& k) {
  Json j;
  j["kind"] = std::string(kind_name(k.kind()));
  std::visit(
      [&j](const auto& law) {
        using L = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<L, DiracLaw>) {
          j["c"] = law.count;
        } else if constexpr (std::is_same_v<L, BinomialLaw>) {
          j["n"] = law.trials;
          j["p"] = law.success_prob;
        } else if constexpr (std::is_same_v<L, PoissonLaw>) {
          j["c"] = law.mean;
        } else if constexpr (std::is_same_v<L, OrthogonalDieLaw>) {
          j["m"] = law.lo;
          j["n"] = law.hi;
        } else if constexpr (std::is_same_v<L, NegativeBinomialLaw>) {
          j["r"] = law.successes;
          j["p"] = law.success_prob;
        } else {
          j["s"] = law.exponent;
        }
      },
      k.law());
  return j.dump();
}

DiscreteMeasure measure_from_json(const std::string& text) {
  const Json j = parse(text);
  require_object(j, "discrete measure");
  std::vector<std::pair<std::string, double>> pts;
  for (const auto& [label, value] : j.items()) {
    if (!value.is_number()) {
      throw ValidationError("weight of support point \"" + label + "\" must be a number");
    }
    pts.emplace_back(label, value.get<double>());
  }
  return DiscreteMeasure(std::move(pts));
}

std::string to_json(const DiscreteMeasure& nu) {
  Json j = Json::object();
  for (std::size_t i = 0; i < nu.size(); ++i) j[nu.points()[i]] = nu.weights()[i];
  return j.dump();
}

MeasurableFn fn_from_json(const std::string& text) {
  const Json j = parse(text);
  require_object(j, "function");
  std::map<std::string, double, std::less<>> values;
  for (const auto& [label, value] : j.items()) {
    if (!value.is_number()) {
      throw ValidationError("function value at \"" + label + "\" must be a number");
    }
    values[label] = value.get<double>();
  }
  return MeasurableFn(std::move(values));
}

std::string to_json(const MeasurableFn& f) {
  Json j = Json::object();
  for (const auto& [label, value] : f.values()) j[label] = value;
  return j.dump();
}

Kernel kernel_from_json(const std::string& text) {
  const Json j = parse(text);
  require_object(j, "kernel");
  std::map<std::string, MeasurementLaw, std::less<>> laws;
  for (const auto& [label, value] : j.items()) {
    require_object(value, "kernel law");
    if (value.size() != 1) {
      throw ValidationError("kernel law at \"" + label + "\" must have exactly one law key");
    }
    const auto inner = value.begin();
    const std::string& law_name = inner.key();
    const Json& body = inner.value();
    if (law_name == "bernoulli") {
      laws.emplace(label, BernoulliKernelLaw{as_number(body, "p", "bernoulli law")});
    } else if (law_name == "moment_only") {
      laws.emplace(label, MomentOnlyKernelLaw{as_number(body, "mean", "moment_only law"),
                                              as_number(body, "variance", "moment_only law")});
    } else if (law_name == "empirical") {
      const Json& draws = require_key(body, "draws", "empirical law");
      if (!draws.is_array()) {
        throw ValidationError("empirical law \"draws\" at \"" + label + "\" must be an array");
      }
      EmpiricalKernelLaw e;
      for (const auto& d : draws) {
        if (!d.is_number()) {
          throw ValidationError("empirical draw at \"" + label + "\" must be a number");
        }
        e.draws.push_back(d.get<double>());
      }
      laws.emplace(label, std::move(e));
    } else {
      throw ValidationError("unknown kernel law \"" + law_name + "\" at \"" + label + "\"");
    }
  }
  return Kernel(std::move(laws));
}

std::string to_json(const Kernel& q) {
  Json j = Json::object();
  for (const auto& [label, law] : q.laws()) {
    std::visit(
        [&](const auto& l) {
          using L = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<L, BernoulliKernelLaw>) {
            j[label] = Json{{"bernoulli", {{"p", l.success_prob}}}};
          } else if constexpr (std::is_same_v<L, MomentOnlyKernelLaw>) {
            j[label] = Json{{"moment_only", {{"mean", l.mean}, {"variance", l.variance}}}};
          } else {
            j[label] = Json{{"empirical", {{"draws", l.draws}}}};
          }
        },
        law);
  }
  return j.dump();
}

RandomMeasure random_measure_from_json(const std::string& text) {
  const Json j = parse(text);
  require_object(j, "random measure");
  const Json& kappa = require_key(j, "kappa", "random measure");
  const Json& nu = require_key(j, "nu", "random measure");
  return RandomMeasure{counting_from_json(kappa.dump()), measure_from_json(nu.dump())};
}

std::string to_json(const RandomMeasure& n) {
  Json j;
  j["kappa"] = Json::parse(to_json(n.kappa));
  j["nu"] = Json::parse(to_json(n.nu));
  return j.dump();
}

Partition partition_from_json(const std::string& text) {
  const Json j = parse(text);
  require_object(j, "partition");
  std::vector<Partition::Cell> cells;
  for (const auto& [label, members] : j.items()) {
    if (!members.is_array()) {
      throw ValidationError("partition cell \"" + label + "\" must be an array of points");
    }
    std::vector<std::string> pts;
    for (const auto& m : members) {
      if (!m.is_string()) {
        throw ValidationError("partition cell \"" + label + "\" must contain point labels");
      }
      pts.push_back(m.get<std::string>());
    }
    cells.emplace_back(label, std::move(pts));
  }
  return Partition(std::move(cells));
}

std::string to_json(const Partition& p) {
  Json j = Json::object();
  for (const auto& [label, members] : p.cells()) j[label] = members;
  return j.dump();
}

VaccineTrial vaccine_trial_from_json(const std::string& text) {
  const Json j = parse(text);
  require_object(j, "vaccine trial");
  std::array<double, 2> weights{0.5, 0.5};
  if (const auto it = j.find("weights"); it != j.end()) {
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
      throw ValidationError("vaccine trial \"weights\" must be an array of two numbers");
    }
    weights = {(*it)[0].get<double>(), (*it)[1].get<double>()};
  }
  return VaccineTrial(as_integer(j, "enrollees", "vaccine trial"),
                      as_integer(j, "cases_treatment", "vaccine trial"),
                      as_integer(j, "cases_control", "vaccine trial"), weights);
}

std::string to_json(const VaccineTrial& t) {
  Json j;
  j["enrollees"] = t.enrollees;
  j["cases_treatment"] = t.cases_treatment;
  j["cases_control"] = t.cases_control;
  j["weights"] = {t.group_weights[0], t.group_weights[1]};
  return j.dump();
}

std::string to_json(const AnovaDecomposition& d) {
  Json j;
  j["total_variance"] = d.total_variance;
  j["degenerate"] = d.degenerate;
  j["cell_variances"] = Json::object();
  for (const auto& [cell, v] : d.cell_variances) j["cell_variances"][cell] = v;
  j["pair_covariances"] = Json::array();
  for (const auto& [pair, cov] : d.pair_covariances) {
    j["pair_covariances"].push_back({{"cells", {pair.first, pair.second}}, {"covariance", cov}});
  }
  j["identity_residual"] = d.identity_residual();
  return j.dump();
}

std::string to_json(const SensitivityReport& r) {
  Json j;
  j["structural"] = Json::object();
  for (const auto& [cell, v] : r.structural) j["structural"][cell] = v;
  j["correlative"] = Json::object();
  for (const auto& [cell, v] : r.correlative) j["correlative"][cell] = v;
  j["S_a_total"] = r.s_a_total;
  j["S_b_total"] = r.s_b_total;
  j["defectiveness"] = std::string(defectiveness_name(r.defectiveness));
  return j.dump();
}

std::string vaccine_report_json(const VaccineReport& r, std::uint64_t seed, std::int64_t reps) {
  Json j;
  j["eff"] = r.eff;
  j["unc"] = r.unc;
  j["s_T"] = r.s_treatment;
  j["s_C"] = r.s_control;
  j["h2"] = r.h2;
  j["ci_sC"] = {{"lower", r.ci_s_control.lower}, {"upper", r.ci_s_control.upper}};
  j["ci_h2"] = {{"lower", r.ci_h2.lower}, {"upper", r.ci_h2.upper}};
  j["seed"] = seed;
  j["reps"] = reps;
  return j.dump(2) + "\n";
}

}  // namespace rmsa
