#pragma once

// Built-in identity suites behind `paramech check`. Each check runs a seeded
// batch of cases and stops at the first counterexample.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paramech/audit.hpp"

namespace paramech {

enum class Suite { Algebra, Calculus, Mech, Audit };

std::optional<Suite> suite_from_name(const std::string& name);
const char* suite_name(Suite s);

struct CheckResult {
  std::string name;
  int cases = 0;
  bool passed = true;
  std::string detail;  // first counterexample
};

struct SuiteReport {
  Suite suite = Suite::Algebra;
  std::vector<CheckResult> checks;
  std::vector<AuditRow> audit;  // audit suite only

  bool passed() const;
  /// Audit rows document the published displays; they never fail a run.
  bool informational() const { return suite == Suite::Audit; }
  std::string format() const;
};

SuiteReport run_suite(Suite s, std::uint64_t seed = 2024);

// Individual checks, shared with the acceptance runner.
CheckResult check_scalar_idempotents();
CheckResult check_operator_identities(std::uint64_t seed, int cases = 100);
CheckResult check_channel_isomorphism(std::uint64_t seed, int cases = 1000);
CheckResult check_d_squared(std::uint64_t seed, int cases = 50);
CheckResult check_vertical_differential(std::uint64_t seed, int cases = 50);
CheckResult check_nijenhuis(std::uint64_t seed, int cases = 20);
CheckResult check_lagrangian_pipeline(std::uint64_t seed, int random_cases = 10);
CheckResult check_degenerate_lagrangian();
CheckResult check_hamiltonian_pipeline(std::uint64_t seed, int cases = 20);
CheckResult check_symplectic_form();

}  // namespace paramech
