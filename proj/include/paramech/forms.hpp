#pragma once

// Exterior calculus on the flat chart with para-complex coordinates
// (z_1..z_n, zb_1..zb_n). Basis directions are numbered by `BasisId`:
// 2(i-1) is z_i (d/dz_i, dz_i) and 2(i-1)+1 is zb_i.

#include <map>
#include <string>
#include <vector>

#include "paramech/expr.hpp"

namespace paramech {

using BasisId = int;

namespace basis {

inline BasisId z(int i) { return 2 * (i - 1); }
inline BasisId zb(int i) { return 2 * (i - 1) + 1; }
inline bool is_conjugate(BasisId id) { return id % 2 == 1; }
inline int index(BasisId id) { return id / 2 + 1; }
inline int count(int dim) { return 2 * dim; }

/// The coordinate function whose differential is this basis covector.
Symbol coordinate(BasisId id);
std::string covector_name(BasisId id);  // "dz1", "dzb1"
std::string vector_name(BasisId id);    // "d/dz1", "d/dzb1"

}  // namespace basis

/// Vector field with one Expr coefficient per basis direction.
class VecField {
 public:
  explicit VecField(int dim);
  static VecField basis(int dim, BasisId id);

  int dim() const { return dim_; }
  const Expr& operator[](BasisId id) const { return coeffs_.at(static_cast<std::size_t>(id)); }
  void set(BasisId id, Expr coefficient);

  /// Derivation action X(f) = sum_a X^a df/dx^a.
  Expr apply(const Expr& f) const;

  bool is_zero() const;
  std::string to_string() const;

  friend VecField operator+(const VecField& a, const VecField& b);
  friend VecField operator-(const VecField& a, const VecField& b);
  friend VecField operator-(const VecField& a) { return Expr(-1) * a; }
  friend VecField operator*(const Expr& f, const VecField& x);
  friend bool operator==(const VecField& a, const VecField& b);

 private:
  int dim_;
  std::vector<Expr> coeffs_;
};

/// Graded form: strictly increasing basis tuples mapped to non-zero coefficients.
class DiffForm {
 public:
  using Index = std::vector<BasisId>;

  DiffForm(int dim, int grade);
  static DiffForm scalar(int dim, const Expr& f);
  static DiffForm basis(int dim, BasisId id);
  static DiffForm dz(int dim, int i) { return basis(dim, basis::z(i)); }
  static DiffForm dzb(int dim, int i) { return basis(dim, basis::zb(i)); }

  int dim() const { return dim_; }
  int grade() const { return grade_; }
  const std::map<Index, Expr>& terms() const { return terms_; }

  /// Coefficient of the (sorted) basis tuple, zero if absent.
  Expr coefficient(const Index& ids) const;
  Expr coefficient(BasisId id) const { return coefficient(Index{id}); }

  /// Adds c * dx^{ids[0]} ^ ... in any order; the tuple is sorted with the
  /// permutation sign and dropped if an id repeats.
  void add_term(Index ids, const Expr& c);

  /// Grade-0 value.
  Expr as_scalar() const;

  bool is_zero() const { return terms_.empty(); }
  std::string to_string() const;
  std::string to_latex() const;

  friend DiffForm operator+(const DiffForm& a, const DiffForm& b);
  friend DiffForm operator-(const DiffForm& a, const DiffForm& b);
  friend DiffForm operator-(const DiffForm& a);
  friend DiffForm operator*(const Expr& f, const DiffForm& a);
  friend bool operator==(const DiffForm& a, const DiffForm& b);

  /// Applies f to every coefficient (results are simplified, zeros dropped).
  template <typename F>
  DiffForm map_coefficients(F&& f) const {
    DiffForm out(dim_, grade_);
    for (const auto& [ids, c] : terms_) out.add_term(ids, f(c));
    return out;
  }

 private:
  int dim_;
  int grade_;
  std::map<Index, Expr> terms_;
};

DiffForm wedge(const DiffForm& a, const DiffForm& b);
DiffForm exterior_d(const DiffForm& a);
inline DiffForm exterior_d(const Expr& f, int dim) { return exterior_d(DiffForm::scalar(dim, f)); }

/// Contraction on the first slot; grade-0 input is a UsageError.
DiffForm interior(const VecField& x, const DiffForm& a);

/// a(X_1, ..., X_r) with (dx^a ^ dx^b)(X, Y) = X^a Y^b - X^b Y^a.
Expr evaluate_form(const DiffForm& a, const std::vector<VecField>& args);

/// J, P+, P-, P+ - P- act on vector fields; their duals act on forms.
enum class StructureOp { J, Pplus, Pminus, Pdiff, Jstar, PstarPlus, PstarMinus, PstarDiff };

bool acts_on_forms(StructureOp op);

/// Multiplier of the operator on a basis vector (or covector for the dual ops):
/// J(d/dz) = -j d/dz, J(d/dzb) = +j d/dzb and P+- = (1 +- J)/2.
ExactPara structure_multiplier(StructureOp op, BasisId id);

VecField apply_structure(StructureOp op, const VecField& x);
/// Dual operators on forms of grade >= 1, acting slot by slot (pullback).
DiffForm apply_structure(StructureOp op, const DiffForm& a);

/// i_J: (i_J w)(Z_1..Z_r) = sum_k w(Z_1, .., J Z_k, .., Z_r). Zero on functions.
DiffForm vertical_derivation(const DiffForm& a);

/// d_J = [i_J, d] = i_J d - d i_J, generic commutator on any grade.
DiffForm vertical_differential(const DiffForm& a);

/// d_J f = (e+ - e-) B(f) with B = -df/dz_i dz_i + df/dzb_i dzb_i.
DiffForm vertical_differential_closed_form(const Expr& f, int dim);

/// [X, Y]^k = X(Y^k) - Y(X^k). Unknown tags in coefficients are a UsageError.
VecField lie_bracket(const VecField& x, const VecField& y);

/// N_J(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] + [X, Y].
VecField nijenhuis(const VecField& x, const VecField& y);

/// Constant metric on the chart; symmetric by construction.
class Metric {
 public:
  explicit Metric(int dim);
  /// g(d/dz_i, d/dzb_j) = delta_ij / 2, all other basis pairs zero.
  static Metric flat(int dim);

  int dim() const { return dim_; }
  const ExactPara& operator()(BasisId a, BasisId b) const;
  void set(BasisId a, BasisId b, ExactPara value);

  Expr evaluate(const VecField& x, const VecField& y) const;

 private:
  int dim_;
  std::vector<ExactPara> g_;
};

/// Phi(X, Y) = g(X, (P+ - P-) Y), assembled from the basis pairs a < b.
DiffForm fundamental_two_form(const Metric& g);

/// g((P+ - P-) X, Y) + g(X, (P+ - P-) Y) = 0 on every basis pair.
bool compatibility_check(const Metric& g);

}  // namespace paramech
