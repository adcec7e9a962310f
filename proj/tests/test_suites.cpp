#include "gtest/gtest.h"

#include "paramech/suites.hpp"

namespace paramech {
namespace {

TEST(Suites, Names) {
  for (Suite s : {Suite::Algebra, Suite::Calculus, Suite::Mech, Suite::Audit})
    EXPECT_EQ(suite_from_name(suite_name(s)), s);
  EXPECT_FALSE(suite_from_name("all"));
  EXPECT_FALSE(suite_from_name("Algebra"));
}

class SuiteRun : public ::testing::TestWithParam<Suite> {};

TEST_P(SuiteRun, Passes) {
  SuiteReport r = run_suite(GetParam());
  EXPECT_TRUE(r.passed()) << r.format();
  EXPECT_FALSE(r.informational());
  for (const CheckResult& c : r.checks) EXPECT_GT(c.cases, 0) << c.name;
}

INSTANTIATE_TEST_SUITE_P(All, SuiteRun, ::testing::Values(Suite::Algebra, Suite::Calculus, Suite::Mech),
                         [](const auto& info) { return std::string(suite_name(info.param)); });

TEST(Suites, AuditIsInformational) {
  SuiteReport r = run_suite(Suite::Audit);
  EXPECT_TRUE(r.informational());
  EXPECT_TRUE(r.checks.empty());
  std::string text = r.format();
  EXPECT_NE(text.find("Eq 3.13: agree"), std::string::npos);
  EXPECT_NE(text.find("Eq 2.8: mismatch (sign)"), std::string::npos);
}

TEST(Suites, CaseCounts) {
  EXPECT_EQ(check_channel_isomorphism(1).cases, 1000);
  EXPECT_EQ(check_operator_identities(1).cases, 100);
  EXPECT_EQ(check_lagrangian_pipeline(1).cases, 11);
}

TEST(Suites, FormatMarksFailures) {
  SuiteReport r;
  r.checks.push_back({"broken", 3, false, "case 2: counterexample"});
  EXPECT_FALSE(r.passed());
  std::string text = r.format();
  EXPECT_NE(text.find("FAIL  broken (3 cases)"), std::string::npos);
  EXPECT_NE(text.find("case 2: counterexample"), std::string::npos);
}

}  // namespace
}  // namespace paramech
