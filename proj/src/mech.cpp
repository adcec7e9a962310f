#include "paramech/mech.hpp"

#include <utility>

namespace paramech {

void validate_function(const Expr& f, int dim, const ParamValues& params) {
  if (dim < 1) throw UsageError("dimension must be >= 1");
  for (const Symbol& s : free_symbols(f)) {
    switch (s.kind) {
      case Symbol::Kind::Coordinate:
      case Symbol::Kind::Conjugate:
        if (s.channel != Channel::None) throw UsageError("channel coordinate " + to_string(s) + " in model function");
        if (s.index < 1 || s.index > dim)
          throw UsageError("coordinate " + to_string(s) + " outside a chart of dimension " + std::to_string(dim));
        break;
      case Symbol::Kind::Time:
        break;
      case Symbol::Kind::Parameter:
        if (!params.contains(s.name)) throw UsageError("undeclared parameter " + s.name);
        break;
      default:
        throw UsageError("symbol " + to_string(s) + " is not allowed in a model function");
    }
  }
}

// ---- unknown fields -----------------------------------------------------------

Symbol component_tag(const std::string& name, bool conjugate, int i, Channel ch) {
  return Symbol::unknown(conjugate ? name + "b" : name, i, ch);
}

VecField tagged_field(const std::string& name, int dim) {
  VecField x(dim);
  for (BasisId a = 0; a < basis::count(dim); ++a) {
    bool bar = basis::is_conjugate(a);
    int i = basis::index(a);
    x.set(a, Expr::e_plus() * Expr(component_tag(name, bar, i, Channel::Plus)) +
                 Expr::e_minus() * Expr(component_tag(name, bar, i, Channel::Minus)));
  }
  return x;
}

std::vector<Symbol> field_tags(const std::string& name, int dim, Channel ch) {
  std::vector<Symbol> tags;
  for (BasisId a = 0; a < basis::count(dim); ++a)
    tags.push_back(component_tag(name, basis::is_conjugate(a), basis::index(a), ch));
  return tags;
}

VecField velocity_field(int dim) {
  VecField v(dim);
  for (int i = 1; i <= dim; ++i) {
    v.set(basis::z(i), Expr(Symbol::velocity(i)));
    v.set(basis::zb(i), Expr(Symbol::conj_velocity(i)));
  }
  return v;
}

Expr total_time_derivative(const Expr& f, int dim) { return velocity_field(dim).apply(f); }

// ---- Lagrangian side ------------------------------------------------------------

DiffForm build_phi_L(const LagrangianModel& m) {
  return -exterior_d(vertical_differential(DiffForm::scalar(m.dim, m.L)));
}

DiffForm build_phi_L_closed_form(const LagrangianModel& m) {
  auto second = [&](const Symbol& a, const Symbol& b) { return diff(diff(m.L, b), a); };
  DiffForm c(m.dim, 2);
  for (int jj = 1; jj <= m.dim; ++jj)
    for (int i = 1; i <= m.dim; ++i) {
      c.add_term({basis::z(jj), basis::z(i)}, second(Symbol::z(jj), Symbol::z(i)));
      c.add_term({basis::z(jj), basis::zb(i)}, -second(Symbol::z(jj), Symbol::zb(i)));
      c.add_term({basis::zb(jj), basis::z(i)}, second(Symbol::zb(jj), Symbol::z(i)));
      c.add_term({basis::zb(jj), basis::zb(i)}, -second(Symbol::zb(jj), Symbol::zb(i)));
    }
  return Expr::e_plus() * c - Expr::e_minus() * c;
}

VecField liouville_field(const VecField& xi) { return apply_structure(StructureOp::J, xi); }

Expr build_energy(const LagrangianModel& m, const VecField& xi) { return liouville_field(xi).apply(m.L) - m.L; }

DiffForm lagrangian_residual(const LagrangianModel& m, const VecField& xi) {
  return interior(xi, build_phi_L(m)) - exterior_d(build_energy(m, xi), m.dim);
}

std::vector<Equation> euler_lagrange_closed_form(const LagrangianModel& m) {
  const Expr j = Expr::e_plus() - Expr::e_minus();
  std::vector<Equation> out;
  for (int i = 1; i <= m.dim; ++i) {
    Expr lz = diff(m.L, Symbol::z(i));
    Expr lzb = diff(m.L, Symbol::zb(i));
    out.push_back({j * total_time_derivative(lz, m.dim) + lz, Expr()});
    out.push_back({j * total_time_derivative(lzb, m.dim) - lzb, Expr()});
  }
  return out;
}

// ---- Hamiltonian side -----------------------------------------------------------

DiffForm canonical_one_form(int dim) {
  const Expr half(ExactPara(Rational(1, 2), Rational(0)));
  DiffForm w(dim, 1);
  for (int i = 1; i <= dim; ++i) {
    w.add_term({basis::zb(i)}, Expr(Symbol::z(i)));
    w.add_term({basis::z(i)}, Expr(Symbol::zb(i)));
  }
  return (half * (Expr::e_plus() + Expr::e_minus())) * w;
}

DiffForm liouville_one_form(int dim) { return apply_structure(StructureOp::PstarDiff, canonical_one_form(dim)); }

DiffForm symplectic_form(int dim) { return -exterior_d(liouville_one_form(dim)); }

VecField hamiltonian_field_closed_form(const HamiltonianModel& m) {
  VecField z(m.dim);
  for (int i = 1; i <= m.dim; ++i) {
    Expr hz = diff(m.H, Symbol::z(i));
    Expr hzb = diff(m.H, Symbol::zb(i));
    z.set(basis::z(i), Expr::e_plus() * -hzb + Expr::e_minus() * hzb);
    z.set(basis::zb(i), Expr::e_plus() * hz - Expr::e_minus() * hz);
  }
  return z;
}

// ---- rendering ------------------------------------------------------------------

std::string Equation::to_string() const { return paramech::to_string(lhs) + " = " + paramech::to_string(rhs); }

std::string Equation::to_latex() const { return paramech::to_latex(lhs) + " = " + paramech::to_latex(rhs); }

std::vector<std::string> ChannelSystem::lines() const {
  std::vector<std::string> out;
  for (BasisId a = 0; a < basis::count(dim); ++a) {
    std::string rhs_text = to_string(rhs[a]);
    if (!rhs[a].is_zero() && !rhs_text.starts_with("-")) rhs_text = "+" + rhs_text;
    out.push_back("d" + to_string(basis::coordinate(a).in_channel(channel)) + "/dt = " + rhs_text);
  }
  return out;
}

// ---- linear algebra -------------------------------------------------------------

namespace {

bool vanishes(const Expr& e) { return e.is_zero() || is_probably_zero(e); }

struct Elimination {
  std::vector<std::vector<Expr>> a;
  std::vector<Expr> b;
  std::vector<int> pivot_columns;

  void run() {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
      // Constant pivots keep the expressions small; otherwise take the first
      // entry that does not vanish numerically.
      std::optional<std::size_t> pivot;
      for (std::size_t r = rank; r < rows && !pivot; ++r)
        if (a[r][col].is_const() && !a[r][col].is_zero() && a[r][col].value().modulus() != 0) pivot = r;
      for (std::size_t r = rank; r < rows && !pivot; ++r)
        if (!vanishes(a[r][col])) pivot = r;
      if (!pivot) continue;
      std::swap(a[rank], a[*pivot]);
      std::swap(b[rank], b[*pivot]);
      Expr inv = pow(a[rank][col], -1);
      for (std::size_t c = col; c < cols; ++c) a[rank][c] = a[rank][c] * inv;
      b[rank] = b[rank] * inv;
      a[rank][col] = Expr(1);
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == rank || a[r][col].is_zero()) continue;
        Expr f = a[r][col];
        for (std::size_t c = col; c < cols; ++c) a[r][c] = a[r][c] - f * a[rank][c];
        b[r] = b[r] - f * b[rank];
        a[r][col] = Expr();
      }
      pivot_columns.push_back(static_cast<int>(col));
      ++rank;
    }
  }
};

}  // namespace

namespace {

/// Laplace expansion along the first row; fine for the small systems here.
Expr determinant(const std::vector<std::vector<Expr>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return Expr(1);
  if (n == 1) return a[0][0];
  Expr out;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    std::vector<std::vector<Expr>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Expr> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    Expr term = a[0][c] * determinant(minor);
    out = c % 2 == 0 ? out + term : out - term;
  }
  return out;
}

}  // namespace

LinearSolution solve_linear(std::vector<std::vector<Expr>> a, std::vector<Expr> b) {
  if (a.size() != b.size()) throw UsageError("linear system shape mismatch");
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  Elimination e{a, b, {}};
  e.run();
  LinearSolution out;
  out.rank = static_cast<int>(e.pivot_columns.size());
  if (static_cast<std::size_t>(out.rank) != cols) return out;
  // Rows beyond the rank must be consistent.
  for (std::size_t r = cols; r < e.b.size(); ++r)
    if (!vanishes(e.b[r])) return out;
  out.x.resize(cols);
  if (a.size() == cols) {
    // Cramer's rule keeps each component a single quotient of polynomials.
    Expr inv = pow(determinant(a), -1);
    for (std::size_t k = 0; k < cols; ++k) {
      std::vector<std::vector<Expr>> ak = a;
      for (std::size_t r = 0; r < cols; ++r) ak[r][k] = b[r];
      out.x[k] = determinant(ak) * inv;
    }
    return out;
  }
  for (std::size_t k = 0; k < cols; ++k) out.x[static_cast<std::size_t>(e.pivot_columns[k])] = e.b[k];
  return out;
}

int expression_rank(std::vector<std::vector<Expr>> a) {
  std::vector<Expr> b(a.size());
  Elimination e{std::move(a), std::move(b), {}};
  e.run();
  return static_cast<int>(e.pivot_columns.size());
}

// ---- solving ----------------------------------------------------------------------

namespace {

const char* channel_sign(Channel ch) { return ch == Channel::Plus ? "+" : "-"; }

struct ChannelSolve {
  Bindings solution;
  int rank = 0;
  bool ok = true;
  std::string report;
};

/// Solves the affine equations "every coefficient of r vanishes" for the
/// unknown tags of `name`, one channel at a time.
ChannelSolve solve_unknowns(const DiffForm& r, const std::string& name, int dim) {
  ChannelSolve out;
  const int n2 = basis::count(dim);
  for (Channel ch : {Channel::Plus, Channel::Minus}) {
    std::vector<Symbol> tags = field_tags(name, dim, ch);
    Bindings zero;
    for (const Symbol& t : tags) zero[t] = Expr();
    std::vector<std::vector<Expr>> a(static_cast<std::size_t>(n2), std::vector<Expr>(static_cast<std::size_t>(n2)));
    std::vector<Expr> rhs(static_cast<std::size_t>(n2));
    for (BasisId k = 0; k < n2; ++k) {
      Expr c = project_channel(r.coefficient(k), ch);
      Expr b0 = substitute(c, zero);
      for (int u = 0; u < n2; ++u) {
        Bindings unit = zero;
        unit[tags[static_cast<std::size_t>(u)]] = Expr(1);
        a[k][u] = substitute(c, unit) - b0;
      }
      rhs[k] = -b0;
    }
    LinearSolution s = solve_linear(std::move(a), std::move(rhs));
    out.rank += s.rank;
    if (s.x.empty()) {
      out.ok = false;
      out.report += std::string(out.report.empty() ? "" : "; ") + "channel " + channel_sign(ch) + " system has rank " +
                    std::to_string(s.rank) + " of " + std::to_string(n2);
      continue;
    }
    for (int u = 0; u < n2; ++u) out.solution[tags[static_cast<std::size_t>(u)]] = drop_channel(s.x[u]);
  }
  return out;
}

VecField substitute_field(const VecField& x, const Bindings& b) {
  VecField out(x.dim());
  for (BasisId a = 0; a < basis::count(x.dim()); ++a) out.set(a, substitute(x[a], b));
  return out;
}

}  // namespace

DerivedSystem solve_lagrangian(const LagrangianModel& m) {
  validate_function(m.L, m.dim, m.params);
  const int n = m.dim;

  // Phi_L = -2j L_{z^j zb^i} dz^j ^ dzb^i is non-degenerate iff the mixed
  // Hessian is regular in both channels.
  int phi_rank = 0;
  std::string report;
  for (Channel ch : {Channel::Plus, Channel::Minus}) {
    std::vector<std::vector<Expr>> mixed(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
    for (int jj = 1; jj <= n; ++jj)
      for (int i = 1; i <= n; ++i)
        mixed[jj - 1][i - 1] = project_channel(diff(diff(m.L, Symbol::zb(i)), Symbol::z(jj)), ch);
    int r = expression_rank(std::move(mixed));
    phi_rank += 2 * r;
    if (r < n) {
      report += std::string(report.empty() ? "" : "; ") + "mixed Hessian d2L/dz dzb has rank " + std::to_string(r) +
                " of " + std::to_string(n) + " in channel " + channel_sign(ch);
    }
  }
  if (!report.empty()) throw SingularHessianError(report + " (Phi_L is degenerate)", phi_rank, 4 * n);

  DiffForm phi = build_phi_L(m);
  VecField xi = tagged_field("xi", n);
  Expr energy = build_energy(m, xi);
  DiffForm residual = interior(xi, phi) - exterior_d(energy, n);
  ChannelSolve solved = solve_unknowns(residual, "xi", n);
  if (!solved.ok) throw SingularHessianError(solved.report, solved.rank, 4 * n);

  VecField dynamics = substitute_field(xi, solved.solution);
  Expr on_shell = substitute(energy, solved.solution);

  std::vector<Equation> equations;
  DiffForm along_curve = lagrangian_residual(m, velocity_field(n));
  for (int i = 1; i <= n; ++i) {
    equations.push_back({along_curve.coefficient(basis::z(i)), Expr()});
    equations.push_back({-along_curve.coefficient(basis::zb(i)), Expr()});
  }

  std::optional<bool> identification;
  if (m.conjugate_is_velocity) {
    bool holds = true;
    for (int i = 1; i <= n; ++i) holds = holds && vanishes(dynamics[basis::z(i)] - Expr(Symbol::zb(i)));
    identification = holds;
  }

  return DerivedSystem{ModelKind::Lagrangian,
                       n,
                       phi,
                       std::nullopt,
                       xi,
                       energy,
                       on_shell,
                       solved.solution,
                       dynamics,
                       std::move(equations),
                       channel_split(dynamics, on_shell, Channel::Plus),
                       channel_split(dynamics, on_shell, Channel::Minus),
                       m.params,
                       identification};
}

DerivedSystem solve_hamiltonian(const HamiltonianModel& m) {
  validate_function(m.H, m.dim, m.params);
  const int n = m.dim;
  DiffForm phi = symplectic_form(n);
  VecField z = tagged_field("Z", n);
  DiffForm residual = interior(z, phi) - exterior_d(m.H, n);
  ChannelSolve solved = solve_unknowns(residual, "Z", n);
  if (!solved.ok) throw Error("symplectic form unexpectedly degenerate: " + solved.report);

  VecField dynamics = substitute_field(z, solved.solution);
  VecField closed = hamiltonian_field_closed_form(m);
  for (BasisId a = 0; a < basis::count(n); ++a)
    if (!vanishes(dynamics[a] - closed[a]))
      throw Error("generic Hamiltonian solve disagrees with the closed form in component " + basis::vector_name(a));

  std::vector<Equation> equations;
  for (int i = 1; i <= n; ++i) {
    equations.push_back({Expr(Symbol::velocity(i)), dynamics[basis::z(i)]});
    equations.push_back({Expr(Symbol::conj_velocity(i)), dynamics[basis::zb(i)]});
  }

  return DerivedSystem{ModelKind::Hamiltonian,
                       n,
                       phi,
                       liouville_one_form(n),
                       z,
                       m.H,
                       m.H,
                       solved.solution,
                       dynamics,
                       std::move(equations),
                       channel_split(dynamics, m.H, Channel::Plus),
                       channel_split(dynamics, m.H, Channel::Minus),
                       m.params,
                       std::nullopt};
}

DiffForm back_substitution_residual(const DerivedSystem& d) {
  DiffForm r = interior(d.unknown_field, d.two_form) - exterior_d(d.energy, d.dim);
  return r.map_coefficients([&](const Expr& c) { return substitute(c, d.solution); });
}

bool residual_vanishes(const DerivedSystem& d) {
  DiffForm r = back_substitution_residual(d);
  for (const auto& [ids, c] : r.terms())
    if (!vanishes(c)) return false;
  return true;
}

// ---- channels ---------------------------------------------------------------------

ChannelSystem channel_split(const VecField& dynamics, const Expr& energy, Channel ch) {
  if (ch == Channel::None) throw UsageError("channel_split needs the plus or minus channel");
  auto check = [](const Expr& e) {
    for (const Symbol& s : free_symbols(e))
      if (s.kind == Symbol::Kind::Unknown) throw UsageError("unresolved component " + to_string(s));
  };
  ChannelSystem out;
  out.channel = ch;
  out.dim = dynamics.dim();
  for (BasisId a = 0; a < basis::count(dynamics.dim()); ++a) {
    check(dynamics[a]);
    out.rhs.push_back(project_channel(dynamics[a], ch));
  }
  check(energy);
  out.energy = project_channel(energy, ch);
  return out;
}

std::pair<ChannelSystem, ChannelSystem> channel_split(const DerivedSystem& d) {
  return {channel_split(d.dynamics, d.energy_on_shell, Channel::Plus),
          channel_split(d.dynamics, d.energy_on_shell, Channel::Minus)};
}

VecField recombine(const ChannelSystem& plus, const ChannelSystem& minus) {
  if (plus.dim != minus.dim) throw UsageError("channel systems of different dimension");
  VecField out(plus.dim);
  for (BasisId a = 0; a < basis::count(plus.dim); ++a) out.set(a, recombine_channels(plus.rhs[a], minus.rhs[a]));
  return out;
}

}  // namespace paramech
