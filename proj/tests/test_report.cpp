#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "paramech/errors.hpp"
#include "paramech/report.hpp"

namespace paramech {
namespace {

TEST(Csv, Header) {
  EXPECT_EQ(csv_header(2), (std::vector<std::string>{"t", "z1_re", "z1_im", "zb1_re", "zb1_im", "z2_re", "z2_im",
                                                     "zb2_re", "zb2_im", "energy_re", "energy_im"}));
}

TEST(CsvProperty, ShortestDecimalRoundTrips) {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 10000; ++k) {
    double x = std::bit_cast<double>(rng());
    if (!std::isfinite(x)) continue;
    std::string s = format_double(x);
    std::istringstream in("v\n" + s + "\n");
    CsvTable t = read_csv(in);
    ASSERT_EQ(std::bit_cast<std::uint64_t>(t.rows[0][0]), std::bit_cast<std::uint64_t>(x)) << s;
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5e-300), "-2.5e-300");
}

TEST(Csv, Malformed) {
  std::istringstream short_row("a,b\n1\n");
  EXPECT_THROW(read_csv(short_row), ParseError);
  std::istringstream word("a,b\n1,x\n");
  try {
    read_csv(word);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
    EXPECT_EQ(e.token(), "x");
  }
  std::istringstream empty("");
  EXPECT_THROW(read_csv(empty), ParseError);
}

TEST(Csv, WritesTrajectory) {
  ModelDocument doc = parse_model(R"({"kind": "hamiltonian", "dim": 1, "function": "z1*zb1",
    "initial": [[1, 0, 1, 0]], "time": {"t0": 0, "t1": 0.5, "dt": 0.25}})");
  CompiledSystem sys(derive(doc), Layout::Channel);
  Trajectory tr = integrate(sys, sys.initial_state(doc.initial), 0, 0.5, 0.25);
  std::stringstream ss;
  write_csv(ss, tr);
  CsvTable t = read_csv(ss);
  ASSERT_EQ(t.rows.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(t.rows[k][0], tr.times[k]);
    EXPECT_EQ(t.rows[k][1], tr.coordinate(k, basis::z(1)).re());
    EXPECT_EQ(t.rows[k][4], tr.coordinate(k, basis::zb(1)).im());
    EXPECT_EQ(t.rows[k][5], tr.energy[k].re());
  }
}

TEST(Report, Formats) {
  EXPECT_EQ(report_format_from_name("json"), ReportFormat::Json);
  EXPECT_FALSE(report_format_from_name("JSON"));
  ModelDocument doc = parse_model(R"({"kind": "hamiltonian", "dim": 1, "function": "z1*zb1"})");
  DerivedSystem d = derive(doc);
  std::string text = derivation_report(doc, d, ReportFormat::Text);
  EXPECT_NE(text.find("dz1/dt = -j*z1"), std::string::npos);
  EXPECT_NE(text.find("lambda = "), std::string::npos);
  std::string latex = derivation_report(doc, d, ReportFormat::Latex);
  EXPECT_NE(latex.find("\\Phi &="), std::string::npos);
  EXPECT_EQ(channels_report(d), "plus: dz1+/dt = -z1+      minus: dz1-/dt = +z1-\n"
                                "plus: dzb1+/dt = +zb1+    minus: dzb1-/dt = -zb1-\n");
}

}  // namespace
}  // namespace paramech
