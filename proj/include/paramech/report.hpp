#pragma once

// Rendering of derivations and trajectories for the command-line tool:
// text/LaTeX/JSON derivation reports and the trajectory CSV.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "paramech/dsl.hpp"
#include "paramech/dynamo.hpp"

namespace paramech {

enum class ReportFormat { Text, Latex, Json };

std::optional<ReportFormat> report_format_from_name(const std::string& name);

/// Derives the document's model (Lagrangian or Hamiltonian).
DerivedSystem derive(const ModelDocument& doc);

/// Full derivation report. JSON keys: model, two_form, one_form (Hamiltonian
/// only), energy, dynamics, equations, channels.
std::string derivation_report(const ModelDocument& doc, const DerivedSystem& d, ReportFormat format);

/// "plus: ..." / "minus: ..." lines of the two real systems.
std::string channels_report(const DerivedSystem& d);

// ---- trajectory CSV ---------------------------------------------------------------

/// t, z{i}_re, z{i}_im, zb{i}_re, zb{i}_im ..., energy_re, energy_im.
std::vector<std::string> csv_header(int dim);

/// Writes header and rows; floats use the shortest round-trip representation.
void write_csv(std::ostream& out, const Trajectory& tr);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Reads a table written by write_csv. Throws ParseError on malformed input.
CsvTable read_csv(std::istream& in);

/// Shortest decimal that parses back to exactly x.
std::string format_double(double x);

/// "t = 1: z1 = 1.54 - 1.18j, zb1 = ...; max drift 3e-15 (tolerance 1e-05)".
std::string simulation_summary(const Trajectory& tr, const ConservationReport& rep);

}  // namespace paramech
