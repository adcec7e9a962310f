#pragma once

// Derivation engines. From a Lagrangian L: Phi_L = -d d_J L, the energy
// E_L = V(L) - L with V = J(xi), and the semispray xi solving i_xi Phi_L = dE_L.
// From a Hamiltonian H: omega, lambda = J*(omega), Phi = -d lambda and the
// field Z_H solving i_Z Phi = dH. Every result is also split into the two
// idempotent channels, where the para-complex system decouples into two real ones.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paramech/forms.hpp"

namespace paramech {

using ParamValues = std::map<std::string, ExactPara>;

struct LagrangianModel {
  int dim = 1;
  Expr L;
  ParamValues params;
  /// Also report whether the solved flow satisfies dz_i/dt = zb_i.
  bool conjugate_is_velocity = false;
};

struct HamiltonianModel {
  int dim = 1;
  Expr H;
  ParamValues params;
};

enum class ModelKind { Lagrangian, Hamiltonian };

/// Symbols must be coordinates of the chart, t, or declared parameters.
void validate_function(const Expr& f, int dim, const ParamValues& params);

// ---- unknown fields -----------------------------------------------------------

/// Tag of one unknown component: `name` for the d/dz_i direction, `name + "b"` for d/dzb_i.
Symbol component_tag(const std::string& name, bool conjugate, int i, Channel ch);

/// e+ (X^{i+} d/dz_i + Xb^{i+} d/dzb_i) + e- (X^{i-} d/dz_i + Xb^{i-} d/dzb_i)
/// with unknown tags named `name` / `name`b.
VecField tagged_field(const std::string& name, int dim);

/// The 4n tags of tagged_field in channel order (plus then minus), each by basis id.
std::vector<Symbol> field_tags(const std::string& name, int dim, Channel ch);

/// sum_i dz_i/dt d/dz_i + dzb_i/dt d/dzb_i, the velocity of an integral curve.
VecField velocity_field(int dim);

/// d/dt f(z(t), zb(t)) = dz_i/dt df/dz_i + dzb_i/dt df/dzb_i.
Expr total_time_derivative(const Expr& f, int dim);

// ---- Lagrangian side ------------------------------------------------------------

/// Phi_L = -d(d_J L) through the generic commutator.
DiffForm build_phi_L(const LagrangianModel& m);

/// Phi_L = (e+ - e-) C with C assembled from the second derivatives of L.
DiffForm build_phi_L_closed_form(const LagrangianModel& m);

/// Liouville field V = J(xi).
VecField liouville_field(const VecField& xi);

/// E_L = V(L) - L for the given semispray.
Expr build_energy(const LagrangianModel& m, const VecField& xi);

/// i_xi Phi_L - dE_L, with xi's coefficients held constant under d.
DiffForm lagrangian_residual(const LagrangianModel& m, const VecField& xi);

/// Euler-Lagrange equations written directly in channel-sign form:
/// j d/dt(dL/dz_i) + dL/dz_i = 0 and j d/dt(dL/dzb_i) - dL/dzb_i = 0.
struct Equation;
std::vector<Equation> euler_lagrange_closed_form(const LagrangianModel& m);

// ---- Hamiltonian side -----------------------------------------------------------

/// omega = 1/2 (z_i dzb_i + zb_i dz_i) (equal in both channels).
DiffForm canonical_one_form(int dim);
/// lambda = (P*+ - P*-)(omega).
DiffForm liouville_one_form(int dim);
/// Phi = -d lambda.
DiffForm symplectic_form(int dim);

/// Z_H = -(e+ - e-) dH/dzb_i d/dz_i + (e+ - e-) dH/dz_i d/dzb_i.
VecField hamiltonian_field_closed_form(const HamiltonianModel& m);

// ---- derived systems --------------------------------------------------------------

struct Equation {
  Expr lhs;
  Expr rhs;
  Expr residual() const { return lhs - rhs; }
  std::string to_string() const;
  std::string to_latex() const;
};

/// One decoupled real channel: right-hand sides by basis id in channel-tagged
/// coordinates (z1+, zb1+, ...).
struct ChannelSystem {
  Channel channel = Channel::Plus;
  int dim = 1;
  std::vector<Expr> rhs;
  Expr energy;

  /// Lines like "dz1+/dt = -z1+".
  std::vector<std::string> lines() const;
};

struct DerivedSystem {
  ModelKind kind;
  int dim;
  DiffForm two_form;                 // Phi_L or Phi
  std::optional<DiffForm> one_form;  // lambda (Hamiltonian only)
  VecField unknown_field;            // tagged semispray / Z_H before solving
  Expr energy;                       // E_L in the unknown tags, or H
  Expr energy_on_shell;              // energy with the solution substituted
  Bindings solution;                 // unknown tag -> solved component
  VecField dynamics;                 // solved field
  std::vector<Equation> equations;
  ChannelSystem plus;
  ChannelSystem minus;
  ParamValues params;
  std::optional<bool> conjugate_velocity_holds;
};

/// Solves i_xi Phi_L = dE_L. Throws SingularHessianError when Phi_L or the
/// linear system for the semispray is degenerate.
DerivedSystem solve_lagrangian(const LagrangianModel& m);

/// Solves i_Z Phi = dH and checks the result against the closed form.
DerivedSystem solve_hamiltonian(const HamiltonianModel& m);

/// substitute(i_X two_form - d energy, solution) for the unknown field X.
DiffForm back_substitution_residual(const DerivedSystem& d);

/// True when every coefficient of back_substitution_residual vanishes.
bool residual_vanishes(const DerivedSystem& d);

/// Per-channel real systems of a solved field; unresolved unknowns are a UsageError.
ChannelSystem channel_split(const VecField& dynamics, const Expr& energy, Channel ch);
std::pair<ChannelSystem, ChannelSystem> channel_split(const DerivedSystem& d);

/// e+ * plus + e- * minus, back on the para-complex chart.
VecField recombine(const ChannelSystem& plus, const ChannelSystem& minus);

// ---- linear algebra over expressions -------------------------------------------

struct LinearSolution {
  int rank = 0;
  std::vector<Expr> x;  // empty unless rank is full
};

/// Gauss-Jordan elimination on A x = b; pivots are tested with is_probably_zero.
LinearSolution solve_linear(std::vector<std::vector<Expr>> a, std::vector<Expr> b);

/// Rank of a square or rectangular expression matrix.
int expression_rank(std::vector<std::vector<Expr>> a);

}  // namespace paramech
