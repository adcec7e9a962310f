#include "paramech/forms.hpp"

#include <algorithm>
#include <utility>

namespace paramech {

namespace basis {

Symbol coordinate(BasisId id) { return is_conjugate(id) ? Symbol::zb(index(id)) : Symbol::z(index(id)); }

std::string covector_name(BasisId id) { return "d" + paramech::to_string(coordinate(id)); }

std::string vector_name(BasisId id) { return "d/d" + paramech::to_string(coordinate(id)); }

}  // namespace basis

namespace {

void check_same_dim(int a, int b) {
  if (a != b) throw UsageError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

bool needs_parens(const Expr& c) { return c.kind() == Expr::Kind::Sum; }

std::string scaled(const Expr& c, const std::string& unit) {
  if (c.is_one()) return unit;
  if (c == Expr(-1)) return "-" + unit;
  std::string s = to_string(c);
  return (needs_parens(c) ? "(" + s + ")" : s) + "*" + unit;
}

std::string join_terms(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const std::string& p = parts[k];
    if (p.starts_with("-")) out += " - " + p.substr(1);
    else out += " + " + p;
  }
  return out;
}

}  // namespace

// ---- VecField ---------------------------------------------------------------

VecField::VecField(int dim) : dim_(dim), coeffs_(static_cast<std::size_t>(basis::count(dim))) {
  if (dim < 1) throw UsageError("chart dimension must be >= 1");
}

VecField VecField::basis(int dim, BasisId id) {
  VecField x(dim);
  x.set(id, Expr(1));
  return x;
}

void VecField::set(BasisId id, Expr coefficient) {
  if (id < 0 || id >= basis::count(dim_)) throw UsageError("basis id out of range");
  coeffs_[static_cast<std::size_t>(id)] = simplify(coefficient);
}

Expr VecField::apply(const Expr& f) const {
  Expr out;
  for (BasisId a = 0; a < basis::count(dim_); ++a) {
    if (coeffs_[a].is_zero()) continue;
    out = out + coeffs_[a] * diff(f, basis::coordinate(a));
  }
  return out;
}

bool VecField::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Expr& c) { return c.is_zero(); });
}

std::string VecField::to_string() const {
  std::vector<std::string> parts;
  for (BasisId a = 0; a < basis::count(dim_); ++a)
    if (!coeffs_[a].is_zero()) parts.push_back(scaled(coeffs_[a], basis::vector_name(a)));
  return join_terms(parts);
}

VecField operator+(const VecField& a, const VecField& b) {
  check_same_dim(a.dim_, b.dim_);
  VecField out(a.dim_);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
  return out;
}

VecField operator-(const VecField& a, const VecField& b) {
  check_same_dim(a.dim_, b.dim_);
  VecField out(a.dim_);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out.coeffs_[k] = a.coeffs_[k] - b.coeffs_[k];
  return out;
}

VecField operator*(const Expr& f, const VecField& x) {
  VecField out(x.dim_);
  for (std::size_t k = 0; k < x.coeffs_.size(); ++k) out.coeffs_[k] = f * x.coeffs_[k];
  return out;
}

bool operator==(const VecField& a, const VecField& b) { return a.dim_ == b.dim_ && a.coeffs_ == b.coeffs_; }

// ---- DiffForm ---------------------------------------------------------------

DiffForm::DiffForm(int dim, int grade) : dim_(dim), grade_(grade) {
  if (dim < 1) throw UsageError("chart dimension must be >= 1");
  if (grade < 0) throw UsageError("form grade must be >= 0");
}

DiffForm DiffForm::scalar(int dim, const Expr& f) {
  DiffForm out(dim, 0);
  out.add_term({}, f);
  return out;
}

DiffForm DiffForm::basis(int dim, BasisId id) {
  DiffForm out(dim, 1);
  out.add_term({id}, Expr(1));
  return out;
}

Expr DiffForm::coefficient(const Index& ids) const {
  auto it = terms_.find(ids);
  return it == terms_.end() ? Expr() : it->second;
}

void DiffForm::add_term(Index ids, const Expr& c) {
  if (static_cast<int>(ids.size()) != grade_) throw UsageError("term grade does not match form grade");
  for (BasisId id : ids)
    if (id < 0 || id >= basis::count(dim_)) throw UsageError("basis id out of range");
  Expr value = simplify(c);
  if (value.is_zero()) return;
  // Insertion sort; each transposition flips the sign.
  bool negate = false;
  for (std::size_t i = 1; i < ids.size(); ++i)
    for (std::size_t k = i; k > 0 && ids[k - 1] > ids[k]; --k) {
      std::swap(ids[k - 1], ids[k]);
      negate = !negate;
    }
  for (std::size_t i = 1; i < ids.size(); ++i)
    if (ids[i] == ids[i - 1]) return;
  if (negate) value = -value;
  auto [it, inserted] = terms_.try_emplace(ids, value);
  if (!inserted) {
    it->second = it->second + value;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Expr DiffForm::as_scalar() const {
  if (grade_ != 0) throw UsageError("form is not of grade 0");
  return coefficient(Index{});
}

std::string DiffForm::to_string() const {
  std::vector<std::string> parts;
  for (const auto& [ids, c] : terms_) {
    if (ids.empty()) {
      parts.push_back(paramech::to_string(c));
      continue;
    }
    std::string unit;
    for (BasisId id : ids) unit += (unit.empty() ? "" : "^") + basis::covector_name(id);
    parts.push_back(scaled(c, unit));
  }
  return join_terms(parts);
}

std::string DiffForm::to_latex() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [ids, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "\\left(" + paramech::to_latex(c) + "\\right)";
    for (std::size_t k = 0; k < ids.size(); ++k) {
      out += k == 0 ? " " : " \\wedge ";
      Symbol s = basis::coordinate(ids[k]);
      out += "\\mathrm{d}" + paramech::to_latex(Expr(s));
    }
  }
  return out;
}

DiffForm operator+(const DiffForm& a, const DiffForm& b) {
  check_same_dim(a.dim_, b.dim_);
  if (a.grade_ != b.grade_) throw UsageError("cannot add forms of different grade");
  DiffForm out = a;
  for (const auto& [ids, c] : b.terms_) out.add_term(ids, c);
  return out;
}

DiffForm operator-(const DiffForm& a) {
  DiffForm out(a.dim_, a.grade_);
  for (const auto& [ids, c] : a.terms_) out.terms_.emplace(ids, -c);
  return out;
}

DiffForm operator-(const DiffForm& a, const DiffForm& b) { return a + (-b); }

DiffForm operator*(const Expr& f, const DiffForm& a) {
  return a.map_coefficients([&](const Expr& c) { return f * c; });
}

bool operator==(const DiffForm& a, const DiffForm& b) {
  return a.dim_ == b.dim_ && a.grade_ == b.grade_ && a.terms_ == b.terms_;
}

// ---- exterior algebra -------------------------------------------------------

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  check_same_dim(a.dim(), b.dim());
  DiffForm out(a.dim(), a.grade() + b.grade());
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      DiffForm::Index ids = ia;
      ids.insert(ids.end(), ib.begin(), ib.end());
      out.add_term(std::move(ids), ca * cb);
    }
  return out;
}

DiffForm exterior_d(const DiffForm& a) {
  DiffForm out(a.dim(), a.grade() + 1);
  for (const auto& [ids, c] : a.terms())
    for (BasisId k = 0; k < basis::count(a.dim()); ++k) {
      Expr dc = diff(c, basis::coordinate(k));
      if (dc.is_zero()) continue;
      DiffForm::Index with{k};
      with.insert(with.end(), ids.begin(), ids.end());
      out.add_term(std::move(with), dc);
    }
  return out;
}

DiffForm interior(const VecField& x, const DiffForm& a) {
  check_same_dim(x.dim(), a.dim());
  if (a.grade() == 0) throw UsageError("interior product of a grade-0 form");
  DiffForm out(a.dim(), a.grade() - 1);
  for (const auto& [ids, c] : a.terms())
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const Expr& xk = x[ids[k]];
      if (xk.is_zero()) continue;
      DiffForm::Index rest = ids;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      Expr term = xk * c;
      out.add_term(std::move(rest), k % 2 == 0 ? term : -term);
    }
  return out;
}

Expr evaluate_form(const DiffForm& a, const std::vector<VecField>& args) {
  if (static_cast<int>(args.size()) != a.grade()) throw UsageError("form evaluated on wrong number of vectors");
  DiffForm cur = a;
  for (const VecField& x : args) cur = interior(x, cur);
  return cur.as_scalar();
}

// ---- structure operators ----------------------------------------------------

bool acts_on_forms(StructureOp op) {
  switch (op) {
    case StructureOp::J:
    case StructureOp::Pplus:
    case StructureOp::Pminus:
    case StructureOp::Pdiff:
      return false;
    default:
      return true;
  }
}

ExactPara structure_multiplier(StructureOp op, BasisId id) {
  const ExactPara jm = basis::is_conjugate(id) ? ExactPara::j() : -ExactPara::j();
  const ExactPara half(Rational(1, 2), Rational(0));
  switch (op) {
    case StructureOp::J:
    case StructureOp::Jstar:
    case StructureOp::Pdiff:
    case StructureOp::PstarDiff:
      return jm;
    case StructureOp::Pplus:
    case StructureOp::PstarPlus:
      return half * (ExactPara::one() + jm);
    case StructureOp::Pminus:
    case StructureOp::PstarMinus:
      return half * (ExactPara::one() - jm);
  }
  return ExactPara::zero();
}

VecField apply_structure(StructureOp op, const VecField& x) {
  if (acts_on_forms(op)) throw UsageError("dual structure operator applied to a vector field");
  VecField out(x.dim());
  for (BasisId a = 0; a < basis::count(x.dim()); ++a) out.set(a, Expr(structure_multiplier(op, a)) * x[a]);
  return out;
}

DiffForm apply_structure(StructureOp op, const DiffForm& a) {
  if (!acts_on_forms(op)) throw UsageError("structure operator on vectors applied to a form");
  if (a.grade() == 0) throw UsageError("dual structure operators act on forms of grade >= 1");
  DiffForm out(a.dim(), a.grade());
  for (const auto& [ids, c] : a.terms()) {
    ExactPara m = ExactPara::one();
    for (BasisId id : ids) m = m * structure_multiplier(op, id);
    out.add_term(ids, Expr(m) * c);
  }
  return out;
}

DiffForm vertical_derivation(const DiffForm& a) {
  DiffForm out(a.dim(), a.grade());
  for (const auto& [ids, c] : a.terms()) {
    ExactPara m = ExactPara::zero();
    for (BasisId id : ids) m = m + structure_multiplier(StructureOp::J, id);
    out.add_term(ids, Expr(m) * c);
  }
  return out;
}

DiffForm vertical_differential(const DiffForm& a) {
  return vertical_derivation(exterior_d(a)) - exterior_d(vertical_derivation(a));
}

DiffForm vertical_differential_closed_form(const Expr& f, int dim) {
  DiffForm b(dim, 1);
  for (int i = 1; i <= dim; ++i) {
    b.add_term({basis::z(i)}, -diff(f, Symbol::z(i)));
    b.add_term({basis::zb(i)}, diff(f, Symbol::zb(i)));
  }
  return (Expr::e_plus() - Expr::e_minus()) * b;
}

// ---- brackets ---------------------------------------------------------------

namespace {

void reject_unknowns(const VecField& x) {
  for (BasisId a = 0; a < basis::count(x.dim()); ++a)
    for (const Symbol& s : free_symbols(x[a]))
      if (s.kind == Symbol::Kind::Unknown)
        throw UsageError("Lie bracket of a field with unresolved component " + to_string(s));
}

}  // namespace

VecField lie_bracket(const VecField& x, const VecField& y) {
  check_same_dim(x.dim(), y.dim());
  reject_unknowns(x);
  reject_unknowns(y);
  VecField out(x.dim());
  for (BasisId k = 0; k < basis::count(x.dim()); ++k) out.set(k, x.apply(y[k]) - y.apply(x[k]));
  return out;
}

VecField nijenhuis(const VecField& x, const VecField& y) {
  auto J = [](const VecField& v) { return apply_structure(StructureOp::J, v); };
  VecField jx = J(x), jy = J(y);
  return lie_bracket(jx, jy) - J(lie_bracket(jx, y)) - J(lie_bracket(x, jy)) + lie_bracket(x, y);
}

// ---- metric -----------------------------------------------------------------

Metric::Metric(int dim) : dim_(dim), g_(static_cast<std::size_t>(basis::count(dim) * basis::count(dim))) {
  if (dim < 1) throw UsageError("chart dimension must be >= 1");
}

Metric Metric::flat(int dim) {
  Metric g(dim);
  for (int i = 1; i <= dim; ++i) g.set(basis::z(i), basis::zb(i), ExactPara(Rational(1, 2), Rational(0)));
  return g;
}

const ExactPara& Metric::operator()(BasisId a, BasisId b) const {
  return g_.at(static_cast<std::size_t>(a * basis::count(dim_) + b));
}

void Metric::set(BasisId a, BasisId b, ExactPara value) {
  const int n = basis::count(dim_);
  if (a < 0 || b < 0 || a >= n || b >= n) throw UsageError("basis id out of range");
  g_[static_cast<std::size_t>(a * n + b)] = value;
  g_[static_cast<std::size_t>(b * n + a)] = std::move(value);
}

Expr Metric::evaluate(const VecField& x, const VecField& y) const {
  check_same_dim(dim_, x.dim());
  check_same_dim(dim_, y.dim());
  Expr out;
  for (BasisId a = 0; a < basis::count(dim_); ++a)
    for (BasisId b = 0; b < basis::count(dim_); ++b)
      if (!(*this)(a, b).is_zero()) out = out + Expr((*this)(a, b)) * x[a] * y[b];
  return out;
}

DiffForm fundamental_two_form(const Metric& g) {
  DiffForm out(g.dim(), 2);
  for (BasisId a = 0; a < basis::count(g.dim()); ++a)
    for (BasisId b = a + 1; b < basis::count(g.dim()); ++b)
      out.add_term({a, b}, Expr(g(a, b) * structure_multiplier(StructureOp::Pdiff, b)));
  return out;
}

bool compatibility_check(const Metric& g) {
  for (BasisId a = 0; a < basis::count(g.dim()); ++a)
    for (BasisId b = 0; b < basis::count(g.dim()); ++b) {
      ExactPara lhs = g(a, b) * structure_multiplier(StructureOp::Pdiff, a) +
                      g(a, b) * structure_multiplier(StructureOp::Pdiff, b);
      if (!lhs.is_zero()) return false;
    }
  return true;
}

}  // namespace paramech
