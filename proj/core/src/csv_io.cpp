// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsa/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

#include "rmsa/errors.hpp"

namespace rmsa {

namespace {

// Minimal CSV row scanner with double-quote support.
std::vector<std::string> split_csv_row(const std::string& line, std::size_t row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (quoted) {
    throw ParseError("row " + std::to_string(row) + ": unterminated quote");
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

double parse_field(const std::string& s, std::size_t row, const char* col) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    throw ParseError("row " + std::to_string(row) + ": column " + col + " is blank");
  }
  std::size_t end = s.find_last_not_of(" \t\r");
  const std::string trimmed = s.substr(begin, end - begin + 1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
  if (ec != std::errc{} || ptr != trimmed.data() + trimmed.size()) {
    throw ParseError("row " + std::to_string(row) + ": column " + col +
                     " is not a number: \"" + s + "\"");
  }
  return value;
}

GroupStat parse_arm(const std::vector<std::string>& f, std::size_t base, std::size_t row,
                    const std::string& name, const char* arm) {
  const bool has_ci = !is_blank(f[base + 1]) || !is_blank(f[base + 2]);
  const bool has_sd = !is_blank(f[base + 3]);
  if (has_ci && has_sd) {
    throw ValidationError("row " + std::to_string(row) + " (\"" + name + "\"): " + arm +
                          " arm has both a confidence interval and a standard deviation");
  }
  if (!has_ci && !has_sd) {
    throw ValidationError("row " + std::to_string(row) + " (\"" + name + "\"): " + arm +
                          " arm has neither a confidence interval nor a standard deviation");
  }
  GroupStat g;
  g.mean = parse_field(f[base], row, arm);
  if (has_ci) {
    if (is_blank(f[base + 1]) || is_blank(f[base + 2])) {
      throw ValidationError("row " + std::to_string(row) + " (\"" + name + "\"): " + arm +
                            " arm needs both lo and hi for a confidence interval");
    }
    const double lo = parse_field(f[base + 1], row, arm);
    const double hi = parse_field(f[base + 2], row, arm);
    if (lo > hi) {
      throw ValidationError("row " + std::to_string(row) + " (\"" + name + "\"): " + arm +
                            " arm interval has lo > hi");
    }
    g.dispersion = Ci95{lo, hi};
  } else {
    const double sd = parse_field(f[base + 3], row, arm);
    if (sd < 0.0) {
      throw ValidationError("row " + std::to_string(row) + " (\"" + name + "\"): " + arm +
                            " arm standard deviation is negative");
    }
    g.dispersion = Sd{sd};
  }
  return g;
}

constexpr const char* kEndpointHeader = "name,t_mean,t_lo,t_hi,t_sd,c_mean,c_lo,c_hi,c_sd";

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string format_rounded(double value, int digits) {
  const double scale = std::pow(10.0, digits);
  const double rounded = std::nearbyint(value * scale) / scale;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, rounded);
  return buf;
}

std::vector<EndpointRecord> endpoints_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("empty endpoint CSV: missing header");
  }
  if (strip_cr(line) != kEndpointHeader) {
    throw ParseError(std::string("bad endpoint CSV header; expected \"") + kEndpointHeader +
                     "\"");
  }
  std::vector<EndpointRecord> records;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = strip_cr(line);
    if (is_blank(line)) continue;
    const auto fields = split_csv_row(line, row);
    if (fields.size() != 9) {
      throw ParseError("row " + std::to_string(row) + ": expected 9 columns, got " +
                       std::to_string(fields.size()));
    }
    EndpointRecord rec;
    rec.name = fields[0];
    rec.treatment = parse_arm(fields, 1, row, rec.name, "treatment");
    rec.control = parse_arm(fields, 5, row, rec.name, "control");
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<EndpointRecord> endpoints_from_csv(const std::string& text) {
  std::istringstream in(text);
  return endpoints_from_csv(in);
}

std::string endpoints_to_csv(const std::vector<EndpointRecord>& records) {
  std::string out = std::string(kEndpointHeader) + "\n";
  for (const auto& r : records) {
    out += csv_escape(r.name);
    for (const GroupStat* g : {&r.treatment, &r.control}) {
      out += "," + format_double(g->mean);
      if (const auto* ci = std::get_if<Ci95>(&g->dispersion)) {
        out += "," + format_double(ci->lower) + "," + format_double(ci->upper) + ",";
      } else {
        out += ",,," + format_double(std::get<Sd>(g->dispersion).value);
      }
    }
    out += "\n";
  }
  return out;
}

std::string endpoints_table_csv(const std::vector<EndpointRecord>& records,
                                std::array<double, 2> weights, DispersionRule rule) {
  std::string out = "name,s_T,s_C,h2,s_T_full,s_C_full,h2_full\n";
  for (const auto& r : records) {
    const SensitivitySplit s = endpoint_sensitivity(r, weights, rule);
    out += csv_escape(r.name) + "," + format_rounded(s.s_treatment, 3) + "," +
           format_rounded(s.s_control, 3) + "," + format_rounded(s.h2, 3) + "," +
           format_double(s.s_treatment) + "," + format_double(s.s_control) + "," +
           format_double(s.h2) + "\n";
  }
  return out;
}

std::string sensitivity_csv(const SensitivityReport& report) {
  const bool probabilistic = report.defectiveness == Defectiveness::None;
  std::string out = "cell,S_a,S_b,S_prob,entropy_contrib\n";
  for (const auto& [cell, s_a] : report.structural) {
    const double s_b = report.correlative.at(cell);
    out += csv_escape(cell) + "," + format_double(s_a) + "," + format_double(s_b) + ",";
    if (probabilistic) {
      const double contrib = s_a > 0.0 ? -s_a * std::log2(s_a) : 0.0;
      out += format_double(s_a) + "," + format_double(contrib);
    } else {
      out += ",";
    }
    out += "\n";
  }
  return out;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
  std::string out = "p,unc,h2\n";
  for (const auto& r : rows) {
    out += format_double(r.p) + "," + format_double(r.unc) + "," + format_double(r.h2) + "\n";
  }
  return out;
}

}  // namespace rmsa
