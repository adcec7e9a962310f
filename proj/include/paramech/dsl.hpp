#pragma once

// Surface syntax. Expressions:
//
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' exponent)?        exponent: integer, right-associative
//   atom    := number | j | t | z<i> | zb<i> | param | fn '(' sum ')' | '(' sum ')'
//
// Model documents are JSON objects; see ModelDocument.

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "paramech/mech.hpp"

namespace paramech {

/// Parses `src` over the chart of dimension `dim`. Identifiers other than the
/// coordinates, t, j and the builtins must be listed in `params`.
/// Throws ParseError.
Expr parse_expression(std::string_view src, int dim, const std::set<std::string>& params = {});

struct TimeSpan {
  double t0 = 0;
  double t1 = 0;
  double dt = 0;
};

/// Initial value of one coordinate pair: z_re, z_im, zb_re, zb_im.
using InitialPair = std::array<double, 4>;

struct ModelDocument {
  ModelKind kind = ModelKind::Hamiltonian;
  int dim = 1;
  std::string function;
  Expr expr;  // parsed `function`
  ParamValues params;
  std::vector<InitialPair> initial;  // empty when absent
  std::optional<TimeSpan> time;
  std::string integrator = "rk4";
  double rtol = 1e-9;
  std::string output = "-";
  bool identify_conjugate_velocity = false;

  LagrangianModel lagrangian() const;
  HamiltonianModel hamiltonian() const;
};

/// Parses and validates a model document. Throws ModelError naming the key
/// path; expression errors are reported under "function".
ModelDocument parse_model(std::string_view doc);

/// Canonical JSON text of a document; parse_model(to_json(d)) reproduces d.
std::string to_json(const ModelDocument& d, int indent = 2);

/// Value of a constant parameter literal such as "0.5", "2 - j" or "1/3".
ExactPara parse_constant(std::string_view src);

}  // namespace paramech
