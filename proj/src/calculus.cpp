#include <cmath>
#include <random>

#include "paramech/expr.hpp"

namespace paramech {

namespace {

Expr diff_raw(const Expr& e, const Symbol& s) {
  switch (e.kind()) {
    case Expr::Kind::Const: return Expr();
    case Expr::Kind::Var: return e.symbol() == s ? Expr(1) : Expr();
    case Expr::Kind::Sum: {
      std::vector<Expr> terms;
      for (const Expr& t : e.args()) {
        Expr d = diff_raw(t, s);
        if (!d.is_zero()) terms.push_back(std::move(d));
      }
      return terms.empty() ? Expr() : Expr::sum(std::move(terms));
    }
    case Expr::Kind::Product: {
      const auto& f = e.args();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < f.size(); ++i) {
        Expr d = diff_raw(f[i], s);
        if (d.is_zero()) continue;
        std::vector<Expr> factors = f;
        factors[i] = std::move(d);
        terms.push_back(Expr::product(std::move(factors)));
      }
      return terms.empty() ? Expr() : Expr::sum(std::move(terms));
    }
    case Expr::Kind::Power: {
      const Expr& b = e.args()[0];
      Expr d = diff_raw(b, s);
      if (d.is_zero()) return Expr();
      int k = e.exponent();
      return Expr::product({Expr(k), Expr::power(b, k - 1), d});
    }
    case Expr::Kind::Quotient: {
      const Expr& a = e.args()[0];
      const Expr& b = e.args()[1];
      Expr da = diff_raw(a, s);
      Expr db = diff_raw(b, s);
      if (da.is_zero() && db.is_zero()) return Expr();
      Expr num = Expr::sum({Expr::product({da, b}), Expr::product({Expr(-1), a, db})});
      return Expr::quotient(num, Expr::power(b, 2));
    }
    case Expr::Kind::Apply: {
      const Expr& a = e.args()[0];
      Expr d = diff_raw(a, s);
      if (d.is_zero()) return Expr();
      switch (e.builtin()) {
        case Builtin::Sin: return Expr::product({Expr::apply(Builtin::Cos, a), d});
        case Builtin::Cos: return Expr::product({Expr(-1), Expr::apply(Builtin::Sin, a), d});
        case Builtin::Exp: return Expr::product({e, d});
        case Builtin::Cosh: return Expr::product({Expr::apply(Builtin::Sinh, a), d});
        case Builtin::Sinh: return Expr::product({Expr::apply(Builtin::Cosh, a), d});
      }
    }
  }
  return Expr();
}

template <typename F>
Expr rebuild(const Expr& e, F&& on_leaf) {
  switch (e.kind()) {
    case Expr::Kind::Const:
    case Expr::Kind::Var: return on_leaf(e);
    case Expr::Kind::Power: return Expr::power(rebuild(e.args()[0], on_leaf), e.exponent());
    case Expr::Kind::Apply: return Expr::apply(e.builtin(), rebuild(e.args()[0], on_leaf));
    case Expr::Kind::Quotient:
      return Expr::quotient(rebuild(e.args()[0], on_leaf), rebuild(e.args()[1], on_leaf));
    case Expr::Kind::Sum:
    case Expr::Kind::Product: {
      std::vector<Expr> args;
      args.reserve(e.args().size());
      for (const Expr& a : e.args()) args.push_back(rebuild(a, on_leaf));
      return e.kind() == Expr::Kind::Sum ? Expr::sum(std::move(args)) : Expr::product(std::move(args));
    }
  }
  return e;
}

void collect_symbols(const Expr& e, std::set<Symbol>& out) {
  if (e.kind() == Expr::Kind::Var) {
    out.insert(e.symbol());
    return;
  }
  for (const Expr& a : e.args()) collect_symbols(a, out);
}

template <typename T>
struct Evaluator {
  const Environment<T>& env;
  double epsilon;

  ParaScalar<T> inv(const ParaScalar<T>& u) const {
    if constexpr (std::is_same_v<T, double>)
      return invert(u, epsilon);
    else
      return invert(u);
  }

  ParaScalar<T> operator()(const Expr& e) const {
    switch (e.kind()) {
      case Expr::Kind::Const:
        if constexpr (std::is_same_v<T, double>)
          return to_float(e.value());
        else
          return e.value();
      case Expr::Kind::Var: {
        auto it = env.find(e.symbol());
        if (it == env.end()) throw UsageError("unbound symbol '" + to_string(e.symbol()) + "'");
        return it->second;
      }
      case Expr::Kind::Sum: {
        ParaScalar<T> acc = ParaScalar<T>::zero();
        for (const Expr& a : e.args()) acc += (*this)(a);
        return acc;
      }
      case Expr::Kind::Product: {
        ParaScalar<T> acc = ParaScalar<T>::one();
        for (const Expr& a : e.args()) acc *= (*this)(a);
        return acc;
      }
      case Expr::Kind::Power: {
        ParaScalar<T> b = (*this)(e.args()[0]);
        int k = e.exponent();
        if (k < 0) {
          b = inv(b);
          k = -k;
        }
        return paramech::pow(b, k);
      }
      case Expr::Kind::Quotient: return (*this)(e.args()[0]) * inv((*this)(e.args()[1]));
      case Expr::Kind::Apply: {
        ParaScalar<T> a = (*this)(e.args()[0]);
        if constexpr (std::is_same_v<T, double>) {
          switch (e.builtin()) {
            case Builtin::Sin: return map_channels(a, [](double x) { return std::sin(x); });
            case Builtin::Cos: return map_channels(a, [](double x) { return std::cos(x); });
            case Builtin::Exp: return paramech::exp(a);
            case Builtin::Cosh: return map_channels(a, [](double x) { return std::cosh(x); });
            case Builtin::Sinh: return map_channels(a, [](double x) { return std::sinh(x); });
          }
        } else {
          if (a.is_zero()) {
            bool zero_at_zero = e.builtin() == Builtin::Sin || e.builtin() == Builtin::Sinh;
            return zero_at_zero ? ParaScalar<T>::zero() : ParaScalar<T>::one();
          }
          throw UsageError(std::string("cannot evaluate ") + builtin_name(e.builtin()) +
                           " exactly at a non-zero argument");
        }
      }
    }
    return ParaScalar<T>::zero();
  }
};

// Random float point for every free symbol; channels drawn in [0.5, 1.5] so that
// values stay away from the null lines of A.
Environment<double> random_environment(const std::set<Symbol>& symbols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  Environment<double> env;
  for (const Symbol& s : symbols) {
    double p = dist(rng);
    double m = dist(rng);
    if (s.channel != Channel::None && s.kind != Symbol::Kind::Unknown)
      env[s] = FloatPara(p, 0.0);
    else
      env[s] = from_channels(p, m);
  }
  return env;
}

double magnitude(const FloatPara& u) { return std::max(std::abs(u.re()), std::abs(u.im())); }

}  // namespace

Expr diff(const Expr& e, const Symbol& s) {
  if (s.kind == Symbol::Kind::Unknown)
    throw UsageError("cannot differentiate with respect to unknown tag '" + to_string(s) + "'");
  return simplify(diff_raw(e, s));
}

Expr substitute(const Expr& e, const Bindings& bindings) {
  if (bindings.empty()) return simplify(e);
  return simplify(rebuild(e, [&](const Expr& leaf) {
    if (leaf.kind() == Expr::Kind::Var) {
      auto it = bindings.find(leaf.symbol());
      if (it != bindings.end()) return it->second;
    }
    return leaf;
  }));
}

std::set<Symbol> free_symbols(const Expr& e) {
  std::set<Symbol> out;
  collect_symbols(e, out);
  return out;
}

bool depends_on(const Expr& e, const Symbol& s) {
  if (e.kind() == Expr::Kind::Var) return e.symbol() == s;
  for (const Expr& a : e.args())
    if (depends_on(a, s)) return true;
  return false;
}

ExactPara evaluate(const Expr& e, const Environment<Rational>& env) {
  return Evaluator<Rational>{env, 0.0}(e);
}

FloatPara evaluate(const Expr& e, const Environment<double>& env, double epsilon) {
  return Evaluator<double>{env, epsilon}(e);
}

Expr project_channel(const Expr& e, Channel ch) {
  if (ch == Channel::None) throw UsageError("project_channel needs the plus or minus channel");
  return simplify(rebuild(e, [&](const Expr& leaf) -> Expr {
    if (leaf.kind() == Expr::Kind::Const) {
      auto c = split(leaf.value());
      return Expr(ExactPara(ch == Channel::Plus ? c.plus : c.minus));
    }
    const Symbol& s = leaf.symbol();
    if (s.kind == Symbol::Kind::Time || s.kind == Symbol::Kind::Unknown) return leaf;
    if (s.channel != Channel::None && s.channel != ch)
      throw UsageError("symbol '" + to_string(s) + "' already lives in the other channel");
    return Expr(s.in_channel(ch));
  }));
}

Expr drop_channel(const Expr& e) {
  return simplify(rebuild(e, [](const Expr& leaf) -> Expr {
    if (leaf.kind() == Expr::Kind::Var && leaf.symbol().kind != Symbol::Kind::Unknown &&
        leaf.symbol().channel != Channel::None)
      return Expr(leaf.symbol().in_channel(Channel::None));
    return leaf;
  }));
}

Expr recombine_channels(const Expr& plus, const Expr& minus) {
  return Expr::e_plus() * drop_channel(plus) + Expr::e_minus() * drop_channel(minus);
}

bool is_probably_zero(const Expr& e, int points, double tolerance, unsigned seed) {
  Expr s = simplify(e);
  if (s.is_zero()) return true;
  if (s.is_const()) return false;
  std::set<Symbol> symbols = free_symbols(s);
  std::mt19937_64 rng(seed);
  int evaluated = 0;
  for (int attempt = 0; attempt < points * 5 && evaluated < points; ++attempt) {
    Environment<double> env = random_environment(symbols, rng);
    FloatPara value;
    double scale = 1.0;
    try {
      value = evaluate(s, env);
      if (s.kind() == Expr::Kind::Sum)
        for (const Expr& t : s.args()) scale = std::max(scale, magnitude(evaluate(t, env)));
    } catch (const ZeroDivisorError&) {
      continue;
    } catch (const NumericRangeError&) {
      continue;
    }
    if (!std::isfinite(value.re()) || !std::isfinite(value.im())) continue;
    ++evaluated;
    if (magnitude(value) > tolerance * scale) return false;
  }
  return evaluated > 0;
}

bool symbolically_equal(const Expr& a, const Expr& b, int points, double tolerance, unsigned seed) {
  if (simplify(a) == simplify(b)) return true;
  return is_probably_zero(a - b, points, tolerance, seed);
}

}  // namespace paramech
