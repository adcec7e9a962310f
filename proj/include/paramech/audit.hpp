#pragma once

// Cross-check of the published displays against the generic machinery.
// Each row transcribes one display literally, evaluates it on a small model
// corpus and compares it with what the operator calculus produces. Mismatches
// are reported with the offending terms, never corrected silently.

#include <string>
#include <vector>

namespace paramech {

struct AuditRow {
  std::string label;        // row label as printed
  std::string subject;      // short description of the display
  bool agree = true;
  std::string mismatch;     // kind of disagreement, e.g. "sign"
  std::vector<std::string> details;

  /// "agree" or "mismatch (<kind>)".
  std::string status() const;
};

std::vector<AuditRow> run_audit();

/// One "label: status" line per row, details indented below.
std::string format_audit(const std::vector<AuditRow>& rows, bool with_details = true);

}  // namespace paramech
