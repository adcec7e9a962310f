#include "paramech/report.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "nlohmann/json.hpp"
#include "paramech/errors.hpp"

namespace paramech {

using nlohmann::json;

std::optional<ReportFormat> report_format_from_name(const std::string& name) {
  if (name == "text") return ReportFormat::Text;
  if (name == "latex") return ReportFormat::Latex;
  if (name == "json") return ReportFormat::Json;
  return std::nullopt;
}

DerivedSystem derive(const ModelDocument& doc) {
  return doc.kind == ModelKind::Lagrangian ? solve_lagrangian(doc.lagrangian()) : solve_hamiltonian(doc.hamiltonian());
}

namespace {

const char* kind_name(ModelKind k) { return k == ModelKind::Lagrangian ? "lagrangian" : "hamiltonian"; }

std::string channel_name(Channel ch) { return ch == Channel::Plus ? "plus" : "minus"; }

std::vector<std::string> channel_latex(const ChannelSystem& sys) {
  std::vector<std::string> out;
  for (BasisId a = 0; a < basis::count(sys.dim); ++a)
    out.push_back("\\frac{d}{dt} " + to_latex(Expr(basis::coordinate(a).in_channel(sys.channel))) + " = " +
                  to_latex(sys.rhs[static_cast<std::size_t>(a)]));
  return out;
}

std::string field_latex(const VecField& x) {
  std::string out;
  for (BasisId a = 0; a < basis::count(x.dim()); ++a) {
    if (x[a].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "\\left(" + to_latex(x[a]) + "\\right) \\frac{\\partial}{\\partial " +
           to_latex(Expr(basis::coordinate(a))) + "}";
  }
  return out.empty() ? "0" : out;
}

json report_json(const ModelDocument& doc, const DerivedSystem& d) {
  json out;
  out["model"] = {{"kind", kind_name(doc.kind)}, {"dim", doc.dim}, {"function", to_string(doc.expr)}};
  out["two_form"] = d.two_form.to_string();
  if (d.one_form) out["one_form"] = d.one_form->to_string();
  out["energy"] = to_string(d.energy_on_shell);
  json dyn = json::object();
  for (BasisId a = 0; a < basis::count(d.dim); ++a) dyn[basis::vector_name(a)] = to_string(d.dynamics[a]);
  out["dynamics"] = dyn;
  json eqs = json::array();
  for (const Equation& e : d.equations) eqs.push_back(e.to_string());
  out["equations"] = eqs;
  out["channels"] = {{"plus", d.plus.lines()}, {"minus", d.minus.lines()}};
  if (d.conjugate_velocity_holds) out["conjugate_is_velocity"] = *d.conjugate_velocity_holds;
  return out;
}

std::string report_text(const ModelDocument& doc, const DerivedSystem& d) {
  const bool lag = doc.kind == ModelKind::Lagrangian;
  std::ostringstream out;
  out << "model: " << kind_name(doc.kind) << ", n = " << doc.dim << "\n";
  out << (lag ? "L = " : "H = ") << to_string(doc.expr) << "\n\n";
  if (d.one_form) out << "lambda = " << d.one_form->to_string() << "\n";
  out << (lag ? "Phi_L = " : "Phi = ") << d.two_form.to_string() << "\n";
  out << (lag ? "E_L = " : "energy = ") << to_string(d.energy_on_shell) << "\n";
  out << (lag ? "xi = " : "Z_H = ") << d.dynamics.to_string() << "\n";
  if (d.conjugate_velocity_holds)
    out << "dz/dt = zb along the flow: " << (*d.conjugate_velocity_holds ? "yes" : "no") << "\n";
  out << "\nequations:\n";
  for (const Equation& e : d.equations) out << "  " << e.to_string() << "\n";
  out << "\nchannels:\n" << channels_report(d);
  return out.str();
}

std::string report_latex(const ModelDocument& doc, const DerivedSystem& d) {
  const bool lag = doc.kind == ModelKind::Lagrangian;
  std::ostringstream out;
  out << "\\begin{align*}\n";
  out << (lag ? "L &= " : "H &= ") << to_latex(doc.expr) << " \\\\\n";
  if (d.one_form) out << "\\lambda &= " << d.one_form->to_latex() << " \\\\\n";
  out << (lag ? "\\Phi_L &= " : "\\Phi &= ") << d.two_form.to_latex() << " \\\\\n";
  out << (lag ? "E_L &= " : "E &= ") << to_latex(d.energy_on_shell) << " \\\\\n";
  out << (lag ? "\\xi &= " : "Z_H &= ") << field_latex(d.dynamics) << "\n";
  out << "\\end{align*}\n\\begin{align*}\n";
  for (std::size_t k = 0; k < d.equations.size(); ++k) {
    std::string line = d.equations[k].to_latex();
    line.insert(line.find(" = "), " &");
    out << line << (k + 1 < d.equations.size() ? " \\\\\n" : "\n");
  }
  out << "\\end{align*}\n";
  for (const ChannelSystem* sys : {&d.plus, &d.minus}) {
    out << "% " << channel_name(sys->channel) << " channel\n\\begin{align*}\n";
    auto lines = channel_latex(*sys);
    for (std::size_t k = 0; k < lines.size(); ++k) {
      lines[k].insert(lines[k].find(" = "), " &");
      out << lines[k] << (k + 1 < lines.size() ? " \\\\\n" : "\n");
    }
    out << "\\end{align*}\n";
  }
  return out.str();
}

}  // namespace

std::string derivation_report(const ModelDocument& doc, const DerivedSystem& d, ReportFormat format) {
  switch (format) {
    case ReportFormat::Text: return report_text(doc, d);
    case ReportFormat::Latex: return report_latex(doc, d);
    case ReportFormat::Json: return report_json(doc, d).dump(2) + "\n";
  }
  return {};
}

std::string channels_report(const DerivedSystem& d) {
  std::ostringstream out;
  auto plus = d.plus.lines(), minus = d.minus.lines();
  std::size_t width = 0;
  for (const auto& l : plus) width = std::max(width, l.size());
  for (std::size_t k = 0; k < plus.size(); ++k) {
    out << "plus: " << plus[k] << std::string(width - plus[k].size() + 4, ' ') << "minus: " << minus[k] << "\n";
  }
  return out.str();
}

// ---- CSV --------------------------------------------------------------------------

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw UsageError("cannot format number");
  return std::string(buf, end);
}

std::vector<std::string> csv_header(int dim) {
  std::vector<std::string> h{"t"};
  for (int i = 1; i <= dim; ++i) {
    std::string k = std::to_string(i);
    for (const char* col : {"_re", "_im"}) h.push_back("z" + k + col);
    for (const char* col : {"_re", "_im"}) h.push_back("zb" + k + col);
  }
  h.push_back("energy_re");
  h.push_back("energy_im");
  return h;
}

void write_csv(std::ostream& out, const Trajectory& tr) {
  auto header = csv_header(tr.dim);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << "\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    out << format_double(tr.times[k]);
    for (BasisId a = 0; a < basis::count(tr.dim); ++a) {
      FloatPara v = tr.coordinate(k, a);
      out << ',' << format_double(v.re()) << ',' << format_double(v.im());
    }
    out << ',' << format_double(tr.energy[k].re()) << ',' << format_double(tr.energy[k].im()) << "\n";
  }
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  int line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (table.header.empty()) {
      table.header = cells;
      continue;
    }
    if (cells.size() != table.header.size())
      throw ParseError(line_no, 1, "expected " + std::to_string(table.header.size()) + " columns", "");
    std::vector<double> row;
    int col = 1;
    for (const std::string& c : cells) {
      double v = 0;
      auto [end, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || end != c.data() + c.size()) throw ParseError(line_no, col, "not a number", c);
      row.push_back(v);
      col += static_cast<int>(c.size()) + 1;
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw ParseError(1, 1, "missing header row", "");
  return table;
}

std::string simulation_summary(const Trajectory& tr, const ConservationReport& rep) {
  std::ostringstream out;
  const std::size_t last = tr.times.size() - 1;
  out << "t = " << format_double(tr.times[last]) << ":";
  for (BasisId a = 0; a < basis::count(tr.dim); ++a)
    out << (a ? ", " : " ") << to_string(basis::coordinate(a)) << " = " << to_string(tr.coordinate(last, a));
  out << "; max drift " << format_double(rep.max_drift()) << " (tolerance " << format_double(rep.tolerance) << ")";
  return out.str();
}

}  // namespace paramech
