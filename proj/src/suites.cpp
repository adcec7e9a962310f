#include "paramech/suites.hpp"

#include <functional>
#include <sstream>

#include "paramech/mech.hpp"
#include "paramech/random.hpp"

namespace paramech {

namespace {

using Case = std::function<std::optional<std::string>(int)>;

/// Runs `cases` cases of `body`; a returned message or an exception is a counterexample.
CheckResult run_check(std::string name, int cases, const Case& body) {
  CheckResult r;
  r.name = std::move(name);
  for (int k = 0; k < cases; ++k) {
    ++r.cases;
    std::optional<std::string> failure;
    try {
      failure = body(k);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (failure) {
      r.passed = false;
      r.detail = "case " + std::to_string(k) + ": " + *failure;
      break;
    }
  }
  return r;
}

std::optional<std::string> unless(bool ok, const std::string& message) {
  if (ok) return std::nullopt;
  return message;
}

bool forms_vanish(const DiffForm& w) {
  for (const auto& [ids, c] : w.terms())
    if (!is_probably_zero(c)) return false;
  return true;
}

LagrangianModel random_regular_lagrangian(Rng& rng, int dim) {
  std::uniform_int_distribution<int> c(1, 5);
  Expr L;
  for (int i = 1; i <= dim; ++i) L = L + Expr(c(rng)) * Expr(Symbol::z(i)) * Expr(Symbol::zb(i));
  return {dim, L + random_polynomial(rng, dim, 3, 2), {}, false};
}

std::optional<std::string> lagrangian_case(const LagrangianModel& m) {
  DerivedSystem d = solve_lagrangian(m);
  DiffForm residual = back_substitution_residual(d);
  if (!forms_vanish(residual)) return "back-substitution residual " + residual.to_string() + " for L = " + to_string(m.L);
  auto closed = euler_lagrange_closed_form(m);
  for (std::size_t k = 0; k < closed.size(); ++k)
    if (!canonically_equal(d.equations[k].residual(), closed[k].residual()))
      return "equation " + d.equations[k].to_string() + " differs from closed form " + closed[k].to_string();
  return std::nullopt;
}

}  // namespace

std::optional<Suite> suite_from_name(const std::string& name) {
  if (name == "algebra") return Suite::Algebra;
  if (name == "calculus") return Suite::Calculus;
  if (name == "mech") return Suite::Mech;
  if (name == "audit") return Suite::Audit;
  return std::nullopt;
}

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::Algebra: return "algebra";
    case Suite::Calculus: return "calculus";
    case Suite::Mech: return "mech";
    case Suite::Audit: return "audit";
  }
  return "?";
}

// ---- algebra ---------------------------------------------------------------------

CheckResult check_scalar_idempotents() {
  return run_check("idempotent identities e+^2 = e+, e-^2 = e-, e+e- = 0, e+ + e- = 1, e+ - e- = j", 1, [](int) {
    const ExactPara ep = ExactPara::e_plus(), em = ExactPara::e_minus();
    return unless(ep * ep == ep && em * em == em && (ep * em).is_zero() && ep + em == ExactPara::one() &&
                      ep - em == ExactPara::j(),
                  "scalar identity fails");
  });
}

CheckResult check_operator_identities(std::uint64_t seed, int cases) {
  Rng rng(seed);
  return run_check("P+-, J on random vector fields and P*+-, J* on random 1-forms", cases, [&](int) {
    VecField x = random_vecfield(rng, 2, 2, 2);
    auto P = [](StructureOp op, const VecField& v) { return apply_structure(op, v); };
    VecField pp = P(StructureOp::Pplus, x), pm = P(StructureOp::Pminus, x);
    if (P(StructureOp::Pplus, pp) != pp || P(StructureOp::Pminus, pm) != pm) return unless(false, "P not idempotent on " + x.to_string());
    if (!P(StructureOp::Pplus, pm).is_zero() || !P(StructureOp::Pminus, pp).is_zero())
      return unless(false, "P+ P- != 0 on " + x.to_string());
    if (pp + pm != x || pp - pm != P(StructureOp::J, x)) return unless(false, "P+ +- P- wrong on " + x.to_string());
    if (P(StructureOp::J, P(StructureOp::J, x)) != x) return unless(false, "J^2 != 1 on " + x.to_string());
    DiffForm w = random_form(rng, 2, 1, 2, 2);
    auto Q = [](StructureOp op, const DiffForm& a) { return apply_structure(op, a); };
    DiffForm qp = Q(StructureOp::PstarPlus, w), qm = Q(StructureOp::PstarMinus, w);
    return unless(Q(StructureOp::PstarPlus, qp) == qp && Q(StructureOp::PstarPlus, qm).is_zero() && qp + qm == w &&
                      qp - qm == Q(StructureOp::Jstar, w),
                  "dual projector identity fails on " + w.to_string());
  });
}

CheckResult check_channel_isomorphism(std::uint64_t seed, int cases) {
  Rng rng(seed);
  return run_check("split is a ring isomorphism A -> R x R; conj swaps channels", cases, [&](int) {
    ExactPara u = random_exact(rng), v = random_exact(rng);
    auto su = split(u), sv = split(v);
    bool ok = split(u * v) == ChannelPair<Rational>{su.plus * sv.plus, su.minus * sv.minus} &&
              split(u + v) == ChannelPair<Rational>{su.plus + sv.plus, su.minus + sv.minus} &&
              split(conj(u)) == ChannelPair<Rational>{su.minus, su.plus} && from_channels(split(u)) == u &&
              conj(u * v) == conj(u) * conj(v);
    return unless(ok, "fails for u = " + to_string(u) + ", v = " + to_string(v));
  });
}

// ---- calculus --------------------------------------------------------------------

CheckResult check_d_squared(std::uint64_t seed, int cases) {
  Rng rng(seed);
  return run_check("d(d w) = 0 on random polynomial forms", cases, [&](int k) {
    DiffForm w = random_form(rng, 2, k % 3, 4, 3);
    DiffForm dd = exterior_d(exterior_d(w));
    return unless(dd.is_zero(), "d d w = " + dd.to_string() + " for w = " + w.to_string());
  });
}

CheckResult check_vertical_differential(std::uint64_t seed, int cases) {
  Rng rng(seed);
  return run_check("d_J f: commutator [i_J, d] equals the closed form", cases, [&](int) {
    Expr f = random_polynomial(rng, 2, 4, 5);
    DiffForm a = vertical_differential(DiffForm::scalar(2, f)), b = vertical_differential_closed_form(f, 2);
    return unless(a == b, "paths differ for f = " + to_string(f));
  });
}

CheckResult check_nijenhuis(std::uint64_t seed, int cases) {
  Rng rng(seed);
  return run_check("Nijenhuis tensor of the flat J vanishes", cases, [&](int) {
    VecField x = random_vecfield(rng, 2, 3, 2), y = random_vecfield(rng, 2, 3, 2);
    VecField n = nijenhuis(x, y);
    return unless(n.is_zero(), "N(X, Y) = " + n.to_string());
  });
}

// ---- mech ------------------------------------------------------------------------

CheckResult check_lagrangian_pipeline(std::uint64_t seed, int random_cases) {
  Rng rng(seed);
  return run_check("Lagrangian solve back-substitutes to zero and matches the closed-form equations",
                   random_cases + 1, [&](int k) -> std::optional<std::string> {
                     if (k == 0) {
                       Expr z1{Symbol::z(1)}, zb1{Symbol::zb(1)};
                       LagrangianModel m{1, z1 * zb1, {}, false};
                       DerivedSystem d = solve_lagrangian(m);
                       if (d.dynamics[basis::z(1)] != Expr::j() * z1 || d.dynamics[basis::zb(1)] != -Expr::j() * zb1)
                         return "L = z1*zb1 solved to " + d.dynamics.to_string();
                       return lagrangian_case(m);
                     }
                     return lagrangian_case(random_regular_lagrangian(rng, 1 + k % 2));
                   });
}

CheckResult check_degenerate_lagrangian() {
  return run_check("degenerate L = 1/2 m zb1^2 - 1/2 k z1^2 raises SingularHessian", 1,
                   [](int) -> std::optional<std::string> {
                     Expr m{Symbol::param("m")}, k{Symbol::param("k")};
                     Expr half(ExactPara(Rational(1, 2), Rational(0)));
                     Expr z1{Symbol::z(1)}, zb1{Symbol::zb(1)};
                     LagrangianModel model{1, half * m * pow(zb1, 2) - half * k * pow(z1, 2),
                                           {{"m", ExactPara::one()}, {"k", ExactPara::one()}}, false};
                     try {
                       solve_lagrangian(model);
                     } catch (const SingularHessianError&) {
                       return std::nullopt;
                     }
                     return "no error raised";
                   });
}

CheckResult check_hamiltonian_pipeline(std::uint64_t seed, int cases) {
  Rng rng(seed);
  return run_check("Hamiltonian solve equals the closed form and Z_H(H) = 0", cases,
                   [&](int k) -> std::optional<std::string> {
                     int n = 1 + k % 2;
                     HamiltonianModel m{n, random_polynomial(rng, n, 4, 4), {}};
                     DerivedSystem d = solve_hamiltonian(m);
                     if (d.dynamics != hamiltonian_field_closed_form(m))
                       return "generic " + d.dynamics.to_string() + " vs closed form for H = " + to_string(m.H);
                     Expr zh = simplify(d.dynamics.apply(m.H));
                     if (!zh.is_zero()) return "Z_H(H) = " + to_string(zh);
                     return std::nullopt;
                   });
}

CheckResult check_symplectic_form() {
  return run_check("Phi = -d lambda equals (e+ - e-) dzb_i ^ dz_i", 2, [](int k) {
    int n = k + 1;
    DiffForm expected(n, 2);
    for (int i = 1; i <= n; ++i) expected.add_term({basis::zb(i), basis::z(i)}, Expr::e_plus() - Expr::e_minus());
    DiffForm phi = -exterior_d(liouville_one_form(n));
    return unless(phi == expected && symplectic_form(n) == expected, "Phi = " + phi.to_string());
  });
}

// ---- reports ---------------------------------------------------------------------

bool SuiteReport::passed() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string SuiteReport::format() const {
  std::ostringstream out;
  out << "[" << suite_name(suite) << "]\n";
  for (const CheckResult& c : checks) {
    out << "  " << (c.passed ? "PASS" : "FAIL") << "  " << c.name << " (" << c.cases << (c.cases == 1 ? " case" : " cases")
        << ")\n";
    if (!c.passed) out << "        " << c.detail << "\n";
  }
  if (suite == Suite::Audit) out << format_audit(audit);
  return out.str();
}

SuiteReport run_suite(Suite s, std::uint64_t seed) {
  SuiteReport r;
  r.suite = s;
  switch (s) {
    case Suite::Algebra:
      r.checks = {check_scalar_idempotents(), check_operator_identities(seed + 1), check_channel_isomorphism(seed + 2)};
      break;
    case Suite::Calculus:
      r.checks = {check_d_squared(seed + 3), check_vertical_differential(seed + 4), check_nijenhuis(seed + 5)};
      break;
    case Suite::Mech:
      r.checks = {check_lagrangian_pipeline(seed + 6), check_degenerate_lagrangian(), check_hamiltonian_pipeline(seed + 7),
                  check_symplectic_form()};
      break;
    case Suite::Audit: r.audit = run_audit(); break;
  }
  return r;
}

}  // namespace paramech
