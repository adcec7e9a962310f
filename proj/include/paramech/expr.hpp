#pragma once

// Symbolic expressions over para-complex coordinates.
//
// z_i and zb_i are independent symbols: differentiation treats them as the
// two Wirtinger-style directions of the para-complex chart. Constants are exact
// para-complex rationals. Expressions are immutable and cheap to copy.

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "paramech/para_scalar.hpp"

namespace paramech {

enum class Channel : signed char { None = 0, Plus = 1, Minus = -1 };

struct Symbol {
  // Declaration order is the canonical sort order of variables.
  enum class Kind : unsigned char {
    Parameter,          // user parameter
    Velocity,           // dz_i/dt along an integral curve
    ConjugateVelocity,  // dzb_i/dt
    Coordinate,         // z_i
    Conjugate,          // zb_i
    Time,               // t
    Unknown,            // unknown field component, e.g. xi^{i+}
  };

  Kind kind = Kind::Parameter;
  int index = 0;
  std::string name;
  /// For channel-projected variables the channel they live in; for unknowns the
  /// idempotent they are attached to.
  Channel channel = Channel::None;

  static Symbol z(int i) { return {Kind::Coordinate, i, "", Channel::None}; }
  static Symbol zb(int i) { return {Kind::Conjugate, i, "", Channel::None}; }
  static Symbol time() { return {Kind::Time, 0, "", Channel::None}; }
  static Symbol param(std::string name) { return {Kind::Parameter, 0, std::move(name), Channel::None}; }
  static Symbol unknown(std::string name, int i, Channel ch) { return {Kind::Unknown, i, std::move(name), ch}; }
  static Symbol velocity(int i) { return {Kind::Velocity, i, "", Channel::None}; }
  static Symbol conj_velocity(int i) { return {Kind::ConjugateVelocity, i, "", Channel::None}; }

  Symbol in_channel(Channel ch) const {
    Symbol s = *this;
    s.channel = ch;
    return s;
  }

  bool is_coordinate() const { return kind == Kind::Coordinate || kind == Kind::Conjugate; }

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

std::string to_string(const Symbol& s);

enum class Builtin : unsigned char { Sin, Cos, Exp, Cosh, Sinh };

const char* builtin_name(Builtin f);
std::optional<Builtin> builtin_from_name(const std::string& name);

class Expr;
struct ExprNode;
namespace detail {
struct Canon;
}

class Expr {
 public:
  enum class Kind : unsigned char { Const, Var, Apply, Power, Product, Sum, Quotient };

  Expr();  // zero
  Expr(ExactPara value);
  Expr(Symbol symbol);
  Expr(int value);

  static Expr constant(ExactPara value) { return Expr(std::move(value)); }
  static Expr var(Symbol s) { return Expr(std::move(s)); }
  static Expr j() { return Expr(ExactPara::j()); }
  static Expr e_plus() { return Expr(ExactPara::e_plus()); }
  static Expr e_minus() { return Expr(ExactPara::e_minus()); }

  // Raw node builders; no simplification is applied.
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, int exponent);
  static Expr quotient(Expr numerator, Expr denominator);
  static Expr apply(Builtin f, Expr arg);

  Kind kind() const;
  const ExactPara& value() const;             // Const
  const Symbol& symbol() const;               // Var
  const std::vector<Expr>& args() const;      // Sum, Product, Quotient (2), Power (1), Apply (1)
  int exponent() const;                       // Power
  Builtin builtin() const;                    // Apply

  bool is_const() const { return kind() == Kind::Const; }
  bool is_zero() const;
  bool is_one() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  friend struct detail::Canon;
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

/// Total structural order; used to sort canonical sums and products.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Arithmetic builds simplified results from (already simplified) operands.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, int exponent);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr exp(const Expr& a);
Expr cosh(const Expr& a);
Expr sinh(const Expr& a);

/// Canonical form: sums flattened with like terms merged, products flattened with
/// constants folded and positive powers of sums expanded, quotients rewritten as
/// negative powers, Power exponents never 0 or 1.
Expr simplify(const Expr& e);

/// Partial derivative; z_i and zb_i are independent. Differentiating with respect
/// to an unknown tag is a UsageError.
Expr diff(const Expr& e, const Symbol& s);

using Bindings = std::map<Symbol, Expr>;

/// Simultaneous substitution followed by simplify().
Expr substitute(const Expr& e, const Bindings& bindings);

std::set<Symbol> free_symbols(const Expr& e);
bool depends_on(const Expr& e, const Symbol& s);

template <typename T>
using Environment = std::map<Symbol, ParaScalar<T>>;

ExactPara evaluate(const Expr& e, const Environment<Rational>& env);
FloatPara evaluate(const Expr& e, const Environment<double>& env, double epsilon = kDefaultEpsilon);

/// Image of e under the channel character chi_ch: constants map to their real
/// channel value and every channel-free coordinate, parameter and velocity symbol
/// is renamed into the channel. Time and unknown tags are left alone.
Expr project_channel(const Expr& e, Channel ch);

/// Inverse renaming of project_channel (the channel tag is dropped from symbols).
Expr drop_channel(const Expr& e);

/// e+ * unproject(plus) + e- * unproject(minus).
Expr recombine_channels(const Expr& plus, const Expr& minus);

/// True when simplify(a - b) is zero.
bool canonically_equal(const Expr& a, const Expr& b);

/// Syntactic equality first, then agreement at `points` random float points.
bool symbolically_equal(const Expr& a, const Expr& b, int points = 20, double tolerance = 1e-10,
                        unsigned seed = 12345);

/// True when e is syntactically zero or vanishes at `points` random float points.
bool is_probably_zero(const Expr& e, int points = 20, double tolerance = 1e-10, unsigned seed = 6789);

// Rendering.
std::string to_string(const Expr& e);
std::string to_latex(const Expr& e);

}  // namespace paramech
