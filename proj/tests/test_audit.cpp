#include "gtest/gtest.h"

#include "paramech/audit.hpp"

namespace paramech {
namespace {

const AuditRow& find(const std::vector<AuditRow>& rows, const std::string& label) {
  for (const AuditRow& r : rows)
    if (r.label == label) return r;
  throw std::runtime_error("no audit row " + label);
}

TEST(Audit, DocumentedOutcomes) {
  auto rows = run_audit();
  EXPECT_EQ(find(rows, "Eq 3.13").status(), "agree");
  EXPECT_EQ(find(rows, "Eq 4.12").status(), "agree");
  EXPECT_EQ(find(rows, "Eq 3.7").status(), "agree");
  EXPECT_EQ(find(rows, "Eq 2.8").status(), "mismatch (sign)");
  EXPECT_EQ(find(rows, "Eq 3.9").status(), "mismatch (typo)");
  EXPECT_FALSE(find(rows, "Eq 3.10").agree);
  EXPECT_FALSE(find(rows, "Eq 3.11").agree);
  for (const char* label : {"Eq 2.4", "Eq 2.5", "Eq 2.7", "Eq 2.9", "Eq 3.2", "Eq 3.3", "Eq 3.4/3.5", "Eq 3.6", "Eq 3.8",
                            "Eq 3.12", "Eq 4.4", "Eq 4.5", "Eq 4.6", "Eq 4.11"})
    EXPECT_TRUE(find(rows, label).agree) << label;
}

TEST(Audit, MismatchesCarryOffendingTerms) {
  auto rows = run_audit();
  const AuditRow& p = find(rows, "Eq 2.8");
  ASSERT_FALSE(p.details.empty());
  EXPECT_NE(p.details.front().find("P+(d/dz1)"), std::string::npos);
  const AuditRow& e = find(rows, "Eq 3.9");
  bool corrected_reading_noted = false;
  for (const std::string& d : e.details)
    if (d.find("display agrees") != std::string::npos) corrected_reading_noted = true;
  EXPECT_TRUE(corrected_reading_noted);
}

TEST(Audit, Formatting) {
  std::string table = format_audit(run_audit(), false);
  EXPECT_NE(table.find("Eq 3.13: agree"), std::string::npos);
  EXPECT_NE(table.find("Eq 2.8: mismatch (sign)"), std::string::npos);
  EXPECT_EQ(table.find("    "), std::string::npos);
}

}  // namespace
}  // namespace paramech
