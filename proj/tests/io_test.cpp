// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#include <string>

#include <gtest/gtest.h>

#include "rmsa/csv_io.hpp"
#include "rmsa/errors.hpp"
#include "rmsa/json_io.hpp"

namespace rmsa {
namespace {

TEST(CountingJson, RoundTripsEveryKind) {
  const std::vector<std::string> specs = {
      R"({"kind":"dirac","c":7})",
      R"({"kind":"binomial","n":10,"p":0.3})",
      R"({"kind":"poisson","c":3.5})",
      R"({"kind":"orthogonal_die","m":5,"n":15})",
      R"({"kind":"negative_binomial","r":2.5,"p":0.4})",
      R"({"kind":"zeta","s":4.0})",
  };
  for (const auto& text : specs) {
    const CountingMeasure k = counting_from_json(text);
    const CountingMeasure k2 = counting_from_json(to_json(k));
    EXPECT_EQ(k.kind(), k2.kind());
    EXPECT_DOUBLE_EQ(k.mean(), k2.mean());
    EXPECT_DOUBLE_EQ(k.variance(), k2.variance());
  }
}

TEST(CountingJson, Diagnostics) {
  try {
    counting_from_json(R"({"kind":"gamma","c":1})");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("\"gamma\""), std::string::npos);
  }
  EXPECT_THROW(counting_from_json("{"), ParseError);
  EXPECT_THROW(counting_from_json(R"([1,2,3])"), ValidationError);
  EXPECT_THROW(counting_from_json(R"({"kind":"poisson"})"), ValidationError);
  EXPECT_THROW(counting_from_json(R"({"kind":"dirac","c":2.5})"), ValidationError);
  EXPECT_THROW(counting_from_json(R"({"kind":"zeta","s":2.0})"), ValidationError);
}

TEST(MeasureJson, RoundTripAndOrder) {
  const DiscreteMeasure nu = measure_from_json(R"({"T":0.5,"C":0.3,"X":0.2})");
  ASSERT_EQ(nu.size(), 3u);
  EXPECT_EQ(nu.points()[0], "T");  // insertion order preserved
  EXPECT_EQ(nu.points()[2], "X");
  const DiscreteMeasure nu2 = measure_from_json(to_json(nu));
  EXPECT_EQ(nu.points(), nu2.points());
  EXPECT_EQ(nu.weights(), nu2.weights());

  EXPECT_THROW(measure_from_json(R"({"T":0.5,"C":0.6})"), ValidationError);
  EXPECT_THROW(measure_from_json(R"({"T":"x"})"), ValidationError);
}

TEST(KernelJson, RoundTrip) {
  const std::string text = R"({
    "T": {"bernoulli": {"p": 0.1}},
    "C": {"moment_only": {"mean": 5.22, "variance": 0.4067}},
    "X": {"empirical": {"draws": [1.0, 2.0, 3.0]}}
  })";
  const Kernel q = kernel_from_json(text);
  EXPECT_DOUBLE_EQ(q.point_mean("T"), 0.1);
  EXPECT_DOUBLE_EQ(q.point_mean("C"), 5.22);
  EXPECT_DOUBLE_EQ(q.point_mean("X"), 2.0);
  EXPECT_FALSE(q.samplable());

  const Kernel q2 = kernel_from_json(to_json(q));
  EXPECT_DOUBLE_EQ(q2.point_variance("C"), 0.4067);
  EXPECT_DOUBLE_EQ(q2.point_variance("X"), 2.0 / 3.0);

  EXPECT_THROW(kernel_from_json(R"({"T": {"weibull": {"k": 2}}})"), ValidationError);
  EXPECT_THROW(kernel_from_json(R"({"T": {"bernoulli": {"p": 1.5}}})"), ValidationError);
}

TEST(RandomMeasureJson, RoundTrip) {
  const RandomMeasure n = random_measure_from_json(
      R"({"kappa": {"kind":"poisson","c":4.0}, "nu": {"C":0.5,"T":0.5}})");
  EXPECT_EQ(n.kappa.kind(), CountingKind::Poisson);
  EXPECT_EQ(n.nu.size(), 2u);
  const RandomMeasure n2 = random_measure_from_json(to_json(n));
  EXPECT_DOUBLE_EQ(n2.kappa.mean(), 4.0);

  EXPECT_THROW(random_measure_from_json(R"({"kappa": {"kind":"poisson","c":4.0}})"),
               ValidationError);
}

TEST(PartitionJson, RoundTrip) {
  const Partition p = partition_from_json(R"({"arm_t": ["T"], "arm_c": ["C"]})");
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.cells()[0].first, "arm_t");
  const Partition p2 = partition_from_json(to_json(p));
  EXPECT_EQ(p2.cells()[1].second, std::vector<std::string>{"C"});

  EXPECT_THROW(partition_from_json(R"({"a": ["x"], "b": ["x"]})"), ValidationError);
  EXPECT_THROW(partition_from_json(R"({"a": "x"})"), ValidationError);
}

TEST(TrialJson, DefaultsAndValidation) {
  const VaccineTrial t = vaccine_trial_from_json(
      R"({"enrollees": 30400, "cases_treatment": 5, "cases_control": 90})");
  EXPECT_EQ(t.enrollees, 30400);
  EXPECT_DOUBLE_EQ(t.group_weights[0], 0.5);

  const VaccineTrial t2 = vaccine_trial_from_json(to_json(t));
  EXPECT_EQ(t2.cases_control, 90);

  EXPECT_THROW(vaccine_trial_from_json(R"({"enrollees": 100})"), ValidationError);
  EXPECT_THROW(vaccine_trial_from_json(
                   R"({"enrollees": 100, "cases_treatment": 1, "cases_control": 1,
                       "weights": [0.5]})"),
               ValidationError);
}

TEST(EndpointCsv, ParsesBlankAndQuotedFields) {
  const std::string text =
      "name,t_mean,t_lo,t_hi,t_sd,c_mean,c_lo,c_hi,c_sd\n"
      "\"Survival, overall\",5.45,3.88,6.05,,5.22,4.24,6.74,\n"
      "Change in tumor size,-23.88,,,18.9,-16.04,,,26.1\n";
  const auto records = endpoints_from_csv(text);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].name, "Survival, overall");
  EXPECT_TRUE(std::holds_alternative<Ci95>(records[0].treatment.dispersion));
  EXPECT_TRUE(std::holds_alternative<Sd>(records[1].control.dispersion));
  EXPECT_DOUBLE_EQ(std::get<Sd>(records[1].control.dispersion).value, 26.1);

  // Round trip through the writer.
  const auto again = endpoints_from_csv(endpoints_to_csv(records));
  ASSERT_EQ(again.size(), 2u);
  EXPECT_EQ(again[0].name, "Survival, overall");
  EXPECT_DOUBLE_EQ(std::get<Ci95>(again[0].control.dispersion).upper, 6.74);
}

TEST(EndpointCsv, RowDiagnostics) {
  const std::string header = "name,t_mean,t_lo,t_hi,t_sd,c_mean,c_lo,c_hi,c_sd\n";
  try {
    endpoints_from_csv(header + "bad,1.0,0.5,1.5,0.2,2.0,1.5,2.5,\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("row 2"), std::string::npos);
    EXPECT_NE(msg.find("both"), std::string::npos);
  }
  EXPECT_THROW(endpoints_from_csv(header + "none,1.0,,,,2.0,1.5,2.5,\n"), ValidationError);
  EXPECT_THROW(endpoints_from_csv(header + "half,1.0,0.5,,,2.0,1.5,2.5,\n"), ValidationError);
  EXPECT_THROW(endpoints_from_csv(header + "bad,oops,0.5,1.5,,2.0,1.5,2.5,\n"), ParseError);
  EXPECT_THROW(endpoints_from_csv("wrong,header\n"), ParseError);
  EXPECT_TRUE(endpoints_from_csv(header).empty());
}

TEST(EndpointCsv, TableOutput) {
  const std::string text =
      "name,t_mean,t_lo,t_hi,t_sd,c_mean,c_lo,c_hi,c_sd\n"
      "same,3.0,2.0,4.0,,3.0,2.0,4.0,\n";
  const auto table = endpoints_table_csv(endpoints_from_csv(text));
  EXPECT_EQ(table,
            "name,s_T,s_C,h2,s_T_full,s_C_full,h2_full\n"
            "same,0.500,0.500,1.000,0.5,0.5,1\n");
}

TEST(Formatting, RoundedHalfEvenAndFullPrecision) {
  EXPECT_EQ(format_rounded(0.20506902770759236, 3), "0.205");
  EXPECT_EQ(format_rounded(0.0015, 3), "0.002");  // nearest representable is above the tie
  EXPECT_EQ(format_rounded(0.5, 0), "0");         // exact tie rounds to even
  EXPECT_EQ(format_rounded(1.5, 0), "2");
  EXPECT_EQ(format_rounded(2.5, 0), "2");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  const double x = 0.29747224891928957;
  EXPECT_EQ(std::stod(format_double(x)), x);  // shortest form round-trips
}

TEST(VaccineReportJson, MirrorsReportFields) {
  const VaccineReport r{0.9444, 0.1111, 0.0526, 0.9474,
                        0.2975, {0.945, 0.950}, {0.287, 0.307}};
  const std::string j = vaccine_report_json(r, 42, 10000);
  for (const char* key : {"\"eff\"", "\"unc\"", "\"s_T\"", "\"s_C\"", "\"h2\"", "\"ci_sC\"",
                          "\"ci_h2\"", "\"lower\"", "\"upper\"", "\"seed\"", "\"reps\""}) {
    EXPECT_NE(j.find(key), std::string::npos) << key;
  }
}

TEST(SensitivityCsvTest, DefectiveLeavesProbabilityColumnsBlank) {
  SensitivityReport defective;
  defective.structural = {{"C", 0.7}, {"T", 0.5}};
  defective.correlative = {{"C", -0.1}, {"T", -0.1}};
  defective.s_a_total = 1.2;
  defective.s_b_total = -0.2;
  defective.defectiveness = Defectiveness::Negative;
  const std::string csv = sensitivity_csv(defective);
  EXPECT_EQ(csv,
            "cell,S_a,S_b,S_prob,entropy_contrib\n"
            "C,0.7,-0.1,,\n"
            "T,0.5,-0.1,,\n");

  SensitivityReport ok;
  ok.structural = {{"C", 0.5}, {"T", 0.5}};
  ok.correlative = {{"C", 0.0}, {"T", 0.0}};
  ok.s_a_total = 1.0;
  ok.defectiveness = Defectiveness::None;
  const std::string csv_ok = sensitivity_csv(ok);
  EXPECT_NE(csv_ok.find("C,0.5,0,0.5,0.5\n"), std::string::npos);
}

}  // namespace
}  // namespace rmsa
