#include "paramech/audit.hpp"

#include <functional>
#include <set>
#include <sstream>

#include "paramech/mech.hpp"

namespace paramech {

std::string AuditRow::status() const { return agree ? "agree" : "mismatch (" + mismatch + ")"; }

std::string format_audit(const std::vector<AuditRow>& rows, bool with_details) {
  std::ostringstream out;
  for (const AuditRow& r : rows) {
    out << r.label << ": " << r.status() << "  -- " << r.subject << "\n";
    if (with_details)
      for (const std::string& d : r.details) out << "    " << d << "\n";
  }
  return out.str();
}

namespace {

const Expr kEp = Expr::e_plus();
const Expr kEm = Expr::e_minus();

Expr Z(int i) { return Expr(Symbol::z(i)); }
Expr ZB(int i) { return Expr(Symbol::zb(i)); }

/// d^2 f / (da db)
Expr d2(const Expr& f, const Symbol& a, const Symbol& b) { return diff(diff(f, b), a); }

Expr xi(int i, Channel ch) { return Expr(component_tag("xi", false, i, ch)); }
Expr xib(int i, Channel ch) { return Expr(component_tag("xi", true, i, ch)); }

bool vanishes(const Expr& e) { return e.is_zero() || is_probably_zero(e); }

std::string short_text(const Expr& e) {
  std::string s = to_string(e);
  return s.size() > 160 ? s.substr(0, 157) + "..." : s;
}

std::string form_key(const DiffForm::Index& ids) {
  std::string s;
  for (BasisId id : ids) s += (s.empty() ? "" : "^") + basis::covector_name(id);
  return s.empty() ? "1" : s;
}

/// Offending coefficients of derived - display.
std::vector<std::string> compare_forms(const std::string& model, const DiffForm& derived, const DiffForm& display) {
  std::set<DiffForm::Index> keys;
  for (const auto& [ids, c] : derived.terms()) keys.insert(ids);
  for (const auto& [ids, c] : display.terms()) keys.insert(ids);
  std::vector<std::string> out;
  for (const auto& ids : keys) {
    Expr a = derived.coefficient(ids), b = display.coefficient(ids);
    if (!vanishes(a - b))
      out.push_back(model + ": coefficient of " + form_key(ids) + ": derived " + short_text(a) + ", display " +
                    short_text(b));
  }
  return out;
}

std::vector<std::string> compare_exprs(const std::string& what, const Expr& derived, const Expr& display) {
  if (vanishes(derived - display)) return {};
  return {what + ": derived " + short_text(derived) + ", display " + short_text(display)};
}

void append(std::vector<std::string>& to, std::vector<std::string> more) {
  to.insert(to.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

struct NamedLagrangian {
  std::string name;
  LagrangianModel model;
};

struct NamedHamiltonian {
  std::string name;
  HamiltonianModel model;
};

std::vector<NamedLagrangian> lagrangian_corpus() {
  const Expr half(ExactPara(Rational(1, 2), Rational(0)));
  return {
      {"L = z1*zb1", {1, Z(1) * ZB(1), {}, false}},
      {"L = z1*zb1 + 1/2*zb1^2 + z1^2*zb1", {1, Z(1) * ZB(1) + half * pow(ZB(1), 2) + pow(Z(1), 2) * ZB(1), {}, false}},
      {"L = z1*zb1 + 2*z2*zb2 + z1*zb2", {2, Z(1) * ZB(1) + 2 * Z(2) * ZB(2) + Z(1) * ZB(2), {}, false}},
  };
}

std::vector<NamedHamiltonian> hamiltonian_corpus() {
  return {
      {"H = z1*zb1", {1, Z(1) * ZB(1), {}}},
      {"H = z1^2*zb2 + z2*zb1 + zb1^3", {2, pow(Z(1), 2) * ZB(2) + Z(2) * ZB(1) + pow(ZB(1), 3), {}}},
  };
}

AuditRow row(std::string label, std::string subject, std::vector<std::string> details, std::string kind) {
  AuditRow r;
  r.label = std::move(label);
  r.subject = std::move(subject);
  r.agree = details.empty();
  if (!r.agree) r.mismatch = std::move(kind);
  r.details = std::move(details);
  return r;
}

// ---- structure operators -------------------------------------------------------

AuditRow audit_J() {
  std::vector<std::string> bad;
  VecField dz = VecField::basis(1, basis::z(1)), dzb = VecField::basis(1, basis::zb(1));
  if (apply_structure(StructureOp::J, dz) != -Expr::j() * dz) bad.push_back("J(d/dz1) != -j d/dz1");
  if (apply_structure(StructureOp::J, dzb) != Expr::j() * dzb) bad.push_back("J(d/dzb1) != j d/dzb1");
  return row("Eq 2.4", "J on d/dz, d/dzb", bad, "value");
}

AuditRow audit_Jstar() {
  std::vector<std::string> bad;
  DiffForm dz = DiffForm::dz(1, 1), dzb = DiffForm::dzb(1, 1);
  if (apply_structure(StructureOp::Jstar, dz) != -Expr::j() * dz) bad.push_back("J*(dz1) != -j dz1");
  if (apply_structure(StructureOp::Jstar, dzb) != Expr::j() * dzb) bad.push_back("J*(dzb1) != j dzb1");
  return row("Eq 2.5", "J* on dz, dzb", bad, "value");
}

AuditRow audit_idempotents() {
  std::vector<std::string> bad;
  const ExactPara ep = ExactPara::e_plus(), em = ExactPara::e_minus();
  if (ep * ep != ep || em * em != em || !(ep * em).is_zero() || ep + em != ExactPara::one() || ep - em != ExactPara::j())
    bad.push_back("scalar idempotent identities fail");
  for (BasisId a = 0; a < 2; ++a) {
    ExactPara p = structure_multiplier(StructureOp::Pplus, a), m = structure_multiplier(StructureOp::Pminus, a);
    ExactPara jm = structure_multiplier(StructureOp::J, a);
    if (p * p != p || m * m != m || !(p * m).is_zero() || p + m != ExactPara::one() || p - m != jm ||
        jm * jm != ExactPara::one())
      bad.push_back("operator identities fail on " + basis::vector_name(a));
  }
  return row("Eq 2.7", "idempotents e+-, projectors P+- = (1 +- J)/2", bad, "value");
}

AuditRow audit_projector_display() {
  // Display: P-+(d/dz) = -e-+ d/dz, P-+(d/dzb) = e-+ d/dzb and the same for P*-+.
  std::vector<std::string> bad;
  struct Case {
    StructureOp op;
    BasisId id;
    ExactPara display;
    const char* name;
  };
  const ExactPara ep = ExactPara::e_plus(), em = ExactPara::e_minus();
  const Case cases[] = {
      {StructureOp::Pplus, basis::z(1), -ep, "P+(d/dz1)"},      {StructureOp::Pminus, basis::z(1), -em, "P-(d/dz1)"},
      {StructureOp::Pplus, basis::zb(1), ep, "P+(d/dzb1)"},     {StructureOp::Pminus, basis::zb(1), em, "P-(d/dzb1)"},
      {StructureOp::PstarPlus, basis::z(1), -ep, "P*+(dz1)"},   {StructureOp::PstarMinus, basis::z(1), -em, "P*-(dz1)"},
      {StructureOp::PstarPlus, basis::zb(1), ep, "P*+(dzb1)"},  {StructureOp::PstarMinus, basis::zb(1), em, "P*-(dzb1)"},
  };
  for (const Case& c : cases) {
    ExactPara derived = structure_multiplier(c.op, c.id);
    if (derived != c.display)
      bad.push_back(std::string(c.name) + ": display " + to_string(c.display) + ", derived from (1 +- J)/2 " +
                    to_string(derived));
  }
  return row("Eq 2.8", "basis action of P+-, P*+-", bad, "sign");
}

AuditRow audit_metric() {
  std::vector<std::string> bad;
  for (int n = 1; n <= 2; ++n) {
    Metric g = Metric::flat(n);
    if (!compatibility_check(g)) bad.push_back("flat metric fails compatibility for n = " + std::to_string(n));
    DiffForm phi = fundamental_two_form(g);
    for (BasisId a = 0; a < basis::count(n); ++a)
      for (BasisId b = 0; b < basis::count(n); ++b) {
        VecField x = VecField::basis(n, a), y = VecField::basis(n, b);
        Expr lhs = evaluate_form(phi, {x, y});
        if (lhs != -evaluate_form(phi, {y, x}) || lhs != g.evaluate(x, apply_structure(StructureOp::J, y)))
          bad.push_back("fundamental form not skew / not g(X, JY) on " + basis::vector_name(a) + ", " +
                        basis::vector_name(b));
      }
  }
  return row("Eq 2.9", "compatibility of the flat metric and the fundamental 2-form", bad, "value");
}

// ---- Lagrangian displays ------------------------------------------------------------

AuditRow audit_liouville_field() {
  std::vector<std::string> bad;
  for (int n = 1; n <= 2; ++n) {
    VecField display(n);
    for (int i = 1; i <= n; ++i) {
      display.set(basis::z(i), kEp * -xi(i, Channel::Plus) + kEm * xi(i, Channel::Minus));
      display.set(basis::zb(i), kEp * xib(i, Channel::Plus) - kEm * xib(i, Channel::Minus));
    }
    VecField derived = liouville_field(tagged_field("xi", n));
    for (BasisId a = 0; a < basis::count(n); ++a)
      append(bad, compare_exprs("n = " + std::to_string(n) + ", " + basis::vector_name(a), derived[a], display[a]));
  }
  return row("Eq 3.2", "Liouville field V = (P+ - P-)(xi)", bad, "value");
}

AuditRow audit_vertical_derivation() {
  std::vector<std::string> bad;
  const int n = 2;
  DiffForm w(n, 2);
  w.add_term({basis::z(1), basis::zb(2)}, Z(1) * ZB(1));
  w.add_term({basis::zb(1), basis::z(2)}, pow(Z(2), 2));
  w.add_term({basis::z(1), basis::z(2)}, Expr::j());
  DiffForm iw = vertical_derivation(w);
  auto J = [](const VecField& v) { return apply_structure(StructureOp::J, v); };
  for (BasisId a = 0; a < basis::count(n); ++a)
    for (BasisId b = 0; b < basis::count(n); ++b) {
      VecField x = VecField::basis(n, a), y = VecField::basis(n, b);
      Expr lhs = evaluate_form(iw, {x, y});
      Expr rhs = evaluate_form(w, {J(x), y}) + evaluate_form(w, {x, J(y)});
      append(bad, compare_exprs(basis::vector_name(a) + ", " + basis::vector_name(b), lhs, rhs));
    }
  return row("Eq 3.3", "vertical derivation i_J as a sum over slots", bad, "value");
}

AuditRow audit_vertical_differential() {
  std::vector<std::string> bad;
  for (const auto& [name, m] : lagrangian_corpus())
    append(bad, compare_forms(name, vertical_differential(DiffForm::scalar(m.dim, m.L)),
                              vertical_differential_closed_form(m.L, m.dim)));
  return row("Eq 3.4/3.5", "d_J = [i_J, d] against (e+ - e-) B", bad, "value");
}

AuditRow audit_phi_L() {
  std::vector<std::string> bad;
  for (const auto& [name, m] : lagrangian_corpus())
    append(bad, compare_forms(name, build_phi_L(m), build_phi_L_closed_form(m)));
  return row("Eq 3.6", "Phi_L = -d d_J L against e+ C - e- C", bad, "value");
}

/// The contraction display, with the Kronecker deltas read as the pairing of
/// the contracted covector with xi.
DiffForm display_contraction(const LagrangianModel& m) {
  const int n = m.dim;
  DiffForm out(n, 1);
  for (Channel ch : {Channel::Plus, Channel::Minus}) {
    const Expr e = ch == Channel::Plus ? kEp : -kEm;  // the minus bracket carries opposite signs
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        Symbol zi = Symbol::z(i), zj = Symbol::z(j), zbi = Symbol::zb(i), zbj = Symbol::zb(j);
        out.add_term({basis::z(i)}, e * xi(j, ch) * d2(m.L, zj, zi));
        out.add_term({basis::z(j)}, e * -xi(i, ch) * d2(m.L, zj, zi));
        out.add_term({basis::zb(i)}, e * -xi(j, ch) * d2(m.L, zj, zbi));
        out.add_term({basis::z(j)}, e * xib(i, ch) * d2(m.L, zj, zbi));
        out.add_term({basis::zb(j)}, e * -xi(i, ch) * d2(m.L, zbj, zi));
        out.add_term({basis::z(i)}, e * xib(j, ch) * d2(m.L, zbj, zi));
        out.add_term({basis::zb(i)}, e * -xib(j, ch) * d2(m.L, zbj, zbi));
        out.add_term({basis::zb(j)}, e * xib(i, ch) * d2(m.L, zbj, zbi));
      }
  }
  return out;
}

AuditRow audit_contraction() {
  std::vector<std::string> bad;
  for (const auto& [name, m] : lagrangian_corpus())
    append(bad, compare_forms(name, interior(tagged_field("xi", m.dim), build_phi_L(m)), display_contraction(m)));
  return row("Eq 3.7", "i_xi Phi_L expanded term by term", bad, "value");
}

AuditRow audit_energy() {
  std::vector<std::string> bad;
  for (const auto& [name, m] : lagrangian_corpus()) {
    Expr display = -m.L;
    for (int i = 1; i <= m.dim; ++i) {
      Expr lz = diff(m.L, Symbol::z(i)), lzb = diff(m.L, Symbol::zb(i));
      display = display + kEp * (-xi(i, Channel::Plus) * lz + xib(i, Channel::Plus) * lzb) +
                kEm * (xi(i, Channel::Minus) * lz - xib(i, Channel::Minus) * lzb);
    }
    append(bad, compare_exprs(name, build_energy(m, tagged_field("xi", m.dim)), display));
  }
  return row("Eq 3.8", "E_L = V(L) - L", bad, "value");
}

/// The channel terms of the dE_L display; `first_order` supplies the two
/// malformed terms written there as d^2L/dz^j dz^i and d^2L/dzb^j dzb^i.
DiffForm display_energy_differential(const LagrangianModel& m,
                                     const std::function<void(DiffForm&, const LagrangianModel&)>& first_order) {
  const int n = m.dim;
  DiffForm out(n, 1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Symbol zi = Symbol::z(i), zj = Symbol::z(j), zbi = Symbol::zb(i), zbj = Symbol::zb(j);
      out.add_term({basis::z(j)}, kEp * -xi(i, Channel::Plus) * d2(m.L, zj, zi));
      out.add_term({basis::z(j)}, kEp * xib(i, Channel::Plus) * d2(m.L, zj, zbi));
      out.add_term({basis::zb(j)}, kEp * -xi(i, Channel::Plus) * d2(m.L, zbj, zi));
      out.add_term({basis::zb(j)}, kEp * xib(i, Channel::Plus) * d2(m.L, zbj, zbi));
      out.add_term({basis::z(j)}, kEm * xi(i, Channel::Minus) * d2(m.L, zj, zi));
      out.add_term({basis::z(j)}, kEm * -xib(i, Channel::Minus) * d2(m.L, zj, zbi));
      out.add_term({basis::zb(j)}, kEm * xi(i, Channel::Minus) * d2(m.L, zbj, zi));
      out.add_term({basis::zb(j)}, kEm * -xib(i, Channel::Minus) * d2(m.L, zbj, zbi));
    }
  first_order(out, m);
  return out;
}

void first_order_corrected(DiffForm& out, const LagrangianModel& m, Expr sign) {
  for (int j = 1; j <= m.dim; ++j) {
    out.add_term({basis::z(j)}, sign * diff(m.L, Symbol::z(j)));
    out.add_term({basis::zb(j)}, sign * diff(m.L, Symbol::zb(j)));
  }
}

AuditRow audit_energy_differential() {
  std::vector<std::string> literal_bad, corrected_bad;
  for (const auto& [name, m] : lagrangian_corpus()) {
    DiffForm derived = exterior_d(build_energy(m, tagged_field("xi", m.dim)), m.dim);
    // Read as written: a second derivative in z^j paired with dz^i.
    DiffForm literal = display_energy_differential(m, [](DiffForm& out, const LagrangianModel& mm) {
      for (int i = 1; i <= mm.dim; ++i)
        for (int j = 1; j <= mm.dim; ++j) {
          out.add_term({basis::z(i)}, -d2(mm.L, Symbol::z(j), Symbol::z(j)));
          out.add_term({basis::zb(i)}, -d2(mm.L, Symbol::zb(j), Symbol::zb(j)));
        }
    });
    DiffForm corrected = display_energy_differential(
        m, [](DiffForm& out, const LagrangianModel& mm) { first_order_corrected(out, mm, Expr(-1)); });
    append(literal_bad, compare_forms(name, derived, literal));
    append(corrected_bad, compare_forms(name, derived, corrected));
  }
  std::vector<std::string> details;
  if (!literal_bad.empty()) {
    details.push_back("terms '-d^2L/dz^j dz^i' and '-d^2L/dzb^j dzb^i' carry one differentiation variable;");
    details.push_back("read literally as second derivatives they disagree with dE_L:");
    for (const std::string& s : literal_bad) details.push_back("  " + s);
  }
  if (corrected_bad.empty()) {
    if (!literal_bad.empty()) details.push_back("read as -dL/dz^j dz^j and -dL/dzb^j dzb^j the display agrees with dE_L");
  } else {
    details.push_back("even the first-order reading disagrees:");
    for (const std::string& s : corrected_bad) details.push_back("  " + s);
  }
  return row("Eq 3.9", "dE_L", details, "typo");
}

/// Shared shape of the two expanded-residual displays (with the first-order
/// terms read as dL/dz^j dz^j).
DiffForm display_residual(const LagrangianModel& m) {
  const int n = m.dim;
  DiffForm out(n, 1);
  for (Channel ch : {Channel::Plus, Channel::Minus}) {
    const Expr e = ch == Channel::Plus ? kEp : -kEm;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        Symbol zi = Symbol::z(i), zj = Symbol::z(j), zbi = Symbol::zb(i), zbj = Symbol::zb(j);
        out.add_term({basis::z(j)}, e * (xi(i, ch) * d2(m.L, zj, zi) + xib(i, ch) * d2(m.L, zbj, zi)));
        out.add_term({basis::zb(j)}, e * -(xi(i, ch) * d2(m.L, zj, zbi) + xib(i, ch) * d2(m.L, zbj, zbi)));
      }
  }
  first_order_corrected(out, m, Expr(1));
  return out;
}

std::vector<AuditRow> audit_residual_displays() {
  std::vector<std::string> bad;
  std::vector<std::string> agreeing;
  for (const auto& [name, m] : lagrangian_corpus()) {
    auto found = compare_forms(name, lagrangian_residual(m, tagged_field("xi", m.dim)), display_residual(m));
    if (found.empty()) agreeing.push_back(name);
    append(bad, std::move(found));
  }
  if (!bad.empty()) {
    bad.insert(bad.begin(), "mixed second derivatives appear as d^2L/dzb^j dz^i (resp. d^2L/dz^j dzb^i) where");
    bad.insert(bad.begin() + 1, "i_xi Phi_L - dE_L has d^2L/dz^j dzb^i; the two differ unless the mixed Hessian is symmetric");
    for (const std::string& a : agreeing) bad.push_back("agrees on " + a);
  }
  return {row("Eq 3.10", "i_xi Phi_L - dE_L = 0 expanded", bad, "index order"),
          row("Eq 3.11", "grouped form of the same residual", bad, "index order")};
}

AuditRow audit_first_form_of_equations() {
  std::vector<std::string> bad;
  const Expr j = kEp - kEm;
  for (const auto& [name, m] : lagrangian_corpus()) {
    DiffForm along = lagrangian_residual(m, velocity_field(m.dim));
    for (int i = 1; i <= m.dim; ++i) {
      Expr lz = diff(m.L, Symbol::z(i)), lzb = diff(m.L, Symbol::zb(i));
      append(bad, compare_exprs(name + ", dz" + std::to_string(i) + " row", along.coefficient(basis::z(i)),
                                j * total_time_derivative(lz, m.dim) + lz));
      append(bad, compare_exprs(name + ", dzb" + std::to_string(i) + " row", along.coefficient(basis::zb(i)),
                                -j * total_time_derivative(lzb, m.dim) + lzb));
    }
  }
  AuditRow r = row("Eq 3.12", "Euler-Lagrange equations as the dz / dzb rows of the residual", bad, "value");
  if (r.agree) r.details.push_back("its second equation is -1 times the second equation of the channel-sign form");
  return r;
}

AuditRow audit_euler_lagrange() {
  std::vector<std::string> bad;
  for (const auto& [name, m] : lagrangian_corpus()) {
    DerivedSystem d = solve_lagrangian(m);
    auto closed = euler_lagrange_closed_form(m);
    for (std::size_t k = 0; k < closed.size(); ++k)
      append(bad, compare_exprs(name + ", equation " + std::to_string(k + 1), d.equations[k].residual(),
                                closed[k].residual()));
    if (!residual_vanishes(d)) bad.push_back(name + ": solved semispray leaves a residual");
  }
  return row("Eq 3.13", "bi-para Euler-Lagrange equations", bad, "value");
}

// ---- Hamiltonian displays ------------------------------------------------------------

AuditRow audit_liouville_form() {
  std::vector<std::string> bad;
  const Expr half(ExactPara(Rational(1, 2), Rational(0)));
  for (int n = 1; n <= 2; ++n) {
    DiffForm inner(n, 1);
    for (int i = 1; i <= n; ++i) {
      inner.add_term({basis::zb(i)}, Z(i));
      inner.add_term({basis::z(i)}, -ZB(i));
    }
    DiffForm display = half * (kEp * inner - kEm * inner);
    append(bad, compare_forms("n = " + std::to_string(n), liouville_one_form(n), display));
  }
  return row("Sec 4 lambda", "lambda = (P*+ - P*-)(omega)", bad, "value");
}

AuditRow audit_symplectic() {
  std::vector<std::string> bad;
  for (int n = 1; n <= 2; ++n) {
    DiffForm display(n, 2);
    for (int i = 1; i <= n; ++i) display.add_term({basis::zb(i), basis::z(i)}, kEp - kEm);
    append(bad, compare_forms("n = " + std::to_string(n), symplectic_form(n), display));
    if (!exterior_d(symplectic_form(n)).is_zero()) bad.push_back("Phi is not closed");
  }
  return row("Sec 4 Phi", "Phi = -d lambda = (e+ - e-) dzb_i ^ dz_i", bad, "value");
}

AuditRow audit_hamiltonian_contraction() {
  std::vector<std::string> bad;
  for (int n = 1; n <= 2; ++n) {
    // Z_H with channel-independent components as displayed.
    VecField zh(n);
    DiffForm display(n, 1);
    for (int i = 1; i <= n; ++i) {
      Expr zi(Symbol::unknown("Z", i, Channel::None)), zbi(Symbol::unknown("Zb", i, Channel::None));
      zh.set(basis::z(i), (kEp + kEm) * zi);
      zh.set(basis::zb(i), (kEp + kEm) * zbi);
      display.add_term({basis::z(i)}, kEp * zbi - kEm * zbi);
      display.add_term({basis::zb(i)}, -kEp * zi + kEm * zi);
    }
    append(bad, compare_forms("n = " + std::to_string(n), interior(zh, symplectic_form(n)), display));
  }
  return row("Eq 4.4", "i_{Z_H} Phi", bad, "value");
}

AuditRow audit_dH() {
  std::vector<std::string> bad;
  for (const auto& [name, m] : hamiltonian_corpus()) {
    DiffForm display(m.dim, 1);
    for (int i = 1; i <= m.dim; ++i) {
      display.add_term({basis::z(i)}, (kEp + kEm) * diff(m.H, Symbol::z(i)));
      display.add_term({basis::zb(i)}, (kEp + kEm) * diff(m.H, Symbol::zb(i)));
    }
    append(bad, compare_forms(name, exterior_d(m.H, m.dim), display));
  }
  return row("Eq 4.5", "dH", bad, "value");
}

AuditRow audit_hamiltonian_field() {
  std::vector<std::string> bad;
  for (const auto& [name, m] : hamiltonian_corpus()) {
    DerivedSystem d = solve_hamiltonian(m);
    VecField display = hamiltonian_field_closed_form(m);
    for (BasisId a = 0; a < basis::count(m.dim); ++a)
      append(bad, compare_exprs(name + ", " + basis::vector_name(a), d.dynamics[a], display[a]));
  }
  return row("Eq 4.6", "Z_H solved from i_Z Phi = dH", bad, "value");
}

AuditRow audit_channel_hamilton() {
  std::vector<std::string> bad;
  for (const auto& [name, m] : hamiltonian_corpus()) {
    DerivedSystem d = solve_hamiltonian(m);
    for (const ChannelSystem* sys : {&d.plus, &d.minus}) {
      Expr s(sys->channel == Channel::Plus ? 1 : -1);
      for (int i = 1; i <= m.dim; ++i) {
        Expr hz = project_channel(diff(m.H, Symbol::z(i)), sys->channel);
        Expr hzb = project_channel(diff(m.H, Symbol::zb(i)), sys->channel);
        std::string tag = name + (sys->channel == Channel::Plus ? ", e+ " : ", e- ");
        append(bad, compare_exprs(tag + "dz" + std::to_string(i) + "/dt", sys->rhs[basis::z(i)], -s * hzb));
        append(bad, compare_exprs(tag + "dzb" + std::to_string(i) + "/dt", sys->rhs[basis::zb(i)], s * hz));
      }
    }
  }
  return row("Eq 4.11", "Hamilton equations per idempotent channel", bad, "value");
}

AuditRow audit_hamilton() {
  std::vector<std::string> bad;
  const Expr j = kEp - kEm;
  for (const auto& [name, m] : hamiltonian_corpus()) {
    DerivedSystem d = solve_hamiltonian(m);
    for (int i = 1; i <= m.dim; ++i) {
      Expr dz = Expr(Symbol::velocity(i)) + j * diff(m.H, Symbol::zb(i));
      Expr dzb = Expr(Symbol::conj_velocity(i)) - j * diff(m.H, Symbol::z(i));
      append(bad, compare_exprs(name + ", dz" + std::to_string(i) + "/dt", d.equations[2 * (i - 1)].residual(), dz));
      append(bad, compare_exprs(name + ", dzb" + std::to_string(i) + "/dt", d.equations[2 * (i - 1) + 1].residual(), dzb));
    }
    if (!vanishes(d.dynamics.apply(m.H))) bad.push_back(name + ": Z_H(H) does not vanish");
  }
  return row("Eq 4.12", "bi-para Hamilton equations", bad, "value");
}

}  // namespace

std::vector<AuditRow> run_audit() {
  std::vector<AuditRow> rows{audit_J(),
                             audit_Jstar(),
                             audit_idempotents(),
                             audit_projector_display(),
                             audit_metric(),
                             audit_liouville_field(),
                             audit_vertical_derivation(),
                             audit_vertical_differential(),
                             audit_phi_L(),
                             audit_contraction(),
                             audit_energy(),
                             audit_energy_differential()};
  for (AuditRow& r : audit_residual_displays()) rows.push_back(std::move(r));
  rows.push_back(audit_first_form_of_equations());
  rows.push_back(audit_euler_lagrange());
  rows.push_back(audit_liouville_form());
  rows.push_back(audit_symplectic());
  rows.push_back(audit_hamiltonian_contraction());
  rows.push_back(audit_dH());
  rows.push_back(audit_hamiltonian_field());
  rows.push_back(audit_channel_hamilton());
  rows.push_back(audit_hamilton());
  return rows;
}

}  // namespace paramech
