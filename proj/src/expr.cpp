#include "paramech/expr.hpp"

#include <algorithm>
#include <cassert>

namespace paramech {

struct ExprNode {
  Expr::Kind kind = Expr::Kind::Const;
  ExactPara value;
  Symbol symbol;
  std::vector<Expr> args;
  int exponent = 0;
  Builtin fn = Builtin::Sin;
  bool canonical = false;
};

namespace {

std::shared_ptr<const ExprNode> const_node(ExactPara v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Expr::Kind::Const;
  n->value = std::move(v);
  n->canonical = true;
  return n;
}

const std::shared_ptr<const ExprNode>& zero_node() {
  static const std::shared_ptr<const ExprNode> node = const_node(ExactPara::zero());
  return node;
}

int kind_rank(Expr::Kind k) { return static_cast<int>(k); }

}  // namespace

// ---------------------------------------------------------------------------
// Construction and access

Expr::Expr() : node_(zero_node()) {}

Expr::Expr(ExactPara value) : node_(const_node(std::move(value))) {}

Expr::Expr(int value) : Expr(ExactPara(Rational(value))) {}

Expr::Expr(Symbol symbol) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Var;
  n->symbol = std::move(symbol);
  n->canonical = true;
  node_ = std::move(n);
}


Expr Expr::sum(std::vector<Expr> terms) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Sum;
  n->args = std::move(terms);
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Product;
  n->args = std::move(factors);
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr Expr::power(Expr base, int exponent) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Power;
  n->args = {std::move(base)};
  n->exponent = exponent;
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr Expr::quotient(Expr numerator, Expr denominator) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Quotient;
  n->args = {std::move(numerator), std::move(denominator)};
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr Expr::apply(Builtin f, Expr arg) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Apply;
  n->args = {std::move(arg)};
  n->fn = f;
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }

const ExactPara& Expr::value() const {
  if (node_->kind != Kind::Const) throw UsageError("expression is not a constant");
  return node_->value;
}

const Symbol& Expr::symbol() const {
  if (node_->kind != Kind::Var) throw UsageError("expression is not a variable");
  return node_->symbol;
}

const std::vector<Expr>& Expr::args() const { return node_->args; }
int Expr::exponent() const { return node_->exponent; }
Builtin Expr::builtin() const { return node_->fn; }

bool Expr::is_zero() const { return node_->kind == Kind::Const && node_->value.is_zero(); }
bool Expr::is_one() const { return node_->kind == Kind::Const && node_->value == ExactPara::one(); }

const char* builtin_name(Builtin f) {
  switch (f) {
    case Builtin::Sin: return "sin";
    case Builtin::Cos: return "cos";
    case Builtin::Exp: return "exp";
    case Builtin::Cosh: return "cosh";
    case Builtin::Sinh: return "sinh";
  }
  return "?";
}

std::optional<Builtin> builtin_from_name(const std::string& name) {
  for (Builtin f : {Builtin::Sin, Builtin::Cos, Builtin::Exp, Builtin::Cosh, Builtin::Sinh})
    if (name == builtin_name(f)) return f;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Ordering

int compare(const Expr& a, const Expr& b) {
  if (&a == &b) return 0;
  int ka = kind_rank(a.kind());
  int kb = kind_rank(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case Expr::Kind::Const: {
      int c = cmp(a.value().re(), b.value().re());
      if (c == 0) c = cmp(a.value().im(), b.value().im());
      return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    case Expr::Kind::Var: {
      auto c = a.symbol() <=> b.symbol();
      return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    case Expr::Kind::Apply:
      if (a.builtin() != b.builtin()) return a.builtin() < b.builtin() ? -1 : 1;
      return compare(a.args()[0], b.args()[0]);
    case Expr::Kind::Power: {
      int c = compare(a.args()[0], b.args()[0]);
      if (c != 0) return c;
      return a.exponent() < b.exponent() ? -1 : a.exponent() > b.exponent() ? 1 : 0;
    }
    default: {
      const auto& x = a.args();
      const auto& y = b.args();
      std::size_t n = std::min(x.size(), y.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = compare(x[i], y[i]);
        if (c != 0) return c;
      }
      return x.size() < y.size() ? -1 : x.size() > y.size() ? 1 : 0;
    }
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  return compare(a, b) == 0;
}

// ---------------------------------------------------------------------------
// Canonicalization


namespace detail {

// Canonical node builders. They mark nodes as canonical so simplify() can stop early.
struct Canon {
  static Expr mark(Expr e) {
    const_cast<ExprNode*>(e.node_.get())->canonical = true;
    return e;
  }
  static bool is_canonical(const Expr& e) { return e.node_->canonical; }

  static Expr make_product(std::vector<Expr> f) { return mark(Expr::product(std::move(f))); }
  static Expr make_sum(std::vector<Expr> t) { return mark(Expr::sum(std::move(t))); }
  static Expr make_power(Expr b, int k) { return mark(Expr::power(std::move(b), k)); }
  static Expr make_apply(Builtin f, Expr a) { return mark(Expr::apply(f, std::move(a))); }

  static std::pair<ExactPara, Expr> split_term(const Expr& t) {
    if (t.kind() == Expr::Kind::Const) return {t.value(), Expr(1)};
    if (t.kind() == Expr::Kind::Product && t.args()[0].kind() == Expr::Kind::Const) {
      std::vector<Expr> rest(t.args().begin() + 1, t.args().end());
      Expr mono = rest.size() == 1 ? rest[0] : make_product(std::move(rest));
      return {t.args()[0].value(), mono};
    }
    return {ExactPara::one(), t};
  }

  static Expr make_term(const ExactPara& c, const Expr& mono) {
    if (c.is_zero()) return Expr();
    if (mono.is_one()) return Expr(c);
    if (c == ExactPara::one()) return mono;
    std::vector<Expr> f{Expr(c)};
    if (mono.kind() == Expr::Kind::Product)
      f.insert(f.end(), mono.args().begin(), mono.args().end());
    else
      f.push_back(mono);
    return make_product(std::move(f));
  }

  static Expr add(const std::vector<Expr>& terms) {
    std::map<Expr, ExactPara, ExprLess> acc;
    auto accumulate = [&](const Expr& t) {
      auto [c, mono] = split_term(t);
      if (c.is_zero()) return;
      auto it = acc.find(mono);
      if (it == acc.end())
        acc.emplace(mono, c);
      else
        it->second += c;
    };
    for (const Expr& t : terms) {
      if (t.kind() == Expr::Kind::Sum)
        for (const Expr& u : t.args()) accumulate(u);
      else
        accumulate(t);
    }
    std::vector<Expr> out;
    for (const auto& [mono, c] : acc)
      if (!c.is_zero()) out.push_back(make_term(c, mono));
    if (out.empty()) return Expr();
    if (out.size() == 1) return out[0];
    return make_sum(std::move(out));
  }

  static std::vector<Expr> terms_of(const Expr& e) {
    if (e.kind() == Expr::Kind::Sum) return e.args();
    return {e};
  }

  // A sum s = c * s' where the first term of s' has coefficient one.
  static std::pair<ExactPara, Expr> normalize_sum(const Expr& s) {
    ExactPara c = split_term(s.args()[0]).first;
    if (c == ExactPara::one() || c.modulus() == 0) return {ExactPara::one(), s};
    ExactPara inv = invert(c);
    std::vector<Expr> scaled;
    for (const Expr& t : s.args()) {
      auto [tc, mono] = split_term(t);
      scaled.push_back(make_term(tc * inv, mono));
    }
    return {c, add(scaled)};
  }

  static Expr mul(const std::vector<Expr>& factors) {
    ExactPara coeff = ExactPara::one();
    std::map<Expr, int, ExprLess> bases;
    std::function<void(const Expr&, int)> visit = [&](const Expr& f, int k) {
      switch (f.kind()) {
        case Expr::Kind::Const:
          if (k >= 0) {
            coeff *= paramech::pow(f.value(), k);
          } else if (f.value().modulus() != 0) {
            coeff *= paramech::pow(f.value(), k);
          } else {
            bases[f] += k;
          }
          return;
        case Expr::Kind::Product:
          for (const Expr& g : f.args()) visit(g, k);
          return;
        case Expr::Kind::Power:
          visit(f.args()[0], f.exponent() * k);
          return;
        case Expr::Kind::Sum: {
          auto [c, s] = normalize_sum(f);
          if (s.kind() != Expr::Kind::Sum) {
            coeff *= paramech::pow(c, k);
            visit(s, k);
            return;
          }
          coeff *= paramech::pow(c, k);
          bases[s] += k;
          return;
        }
        default:
          bases[f] += k;
      }
    };
    for (const Expr& f : factors) visit(f, 1);
    if (coeff.is_zero()) return Expr();

    std::vector<Expr> atoms;
    std::vector<Expr> expand;
    for (const auto& [b, k] : bases) {
      if (k == 0) continue;
      if (b.kind() == Expr::Kind::Sum && k > 0) {
        for (int i = 0; i < k; ++i) expand.push_back(b);
      } else {
        atoms.push_back(k == 1 ? b : make_power(b, k));
      }
    }
    Expr acc;
    if (atoms.empty())
      acc = Expr(coeff);
    else
      acc = make_term(coeff, atoms.size() == 1 ? atoms[0] : make_product(atoms));
    for (const Expr& s : expand) {
      std::vector<Expr> terms;
      for (const Expr& t : terms_of(acc))
        for (const Expr& u : s.args()) terms.push_back(mul({t, u}));
      acc = add(terms);
    }
    return acc;
  }

  static Expr pow(const Expr& b, int k) {
    if (k == 0) return Expr(1);
    if (k == 1) return b;
    switch (b.kind()) {
      case Expr::Kind::Const:
        if (k > 0 || b.value().modulus() != 0) return Expr(paramech::pow(b.value(), k));
        return make_power(b, k);
      case Expr::Kind::Power:
        return pow(b.args()[0], b.exponent() * k);
      case Expr::Kind::Product: {
        std::vector<Expr> f;
        for (const Expr& g : b.args()) f.push_back(pow(g, k));
        return mul(f);
      }
      case Expr::Kind::Sum:
        if (k > 0) return mul(std::vector<Expr>(static_cast<std::size_t>(k), b));
        return mul({make_power(b, k)});
      default:
        return make_power(b, k);
    }
  }

  static Expr apply(Builtin f, const Expr& a) {
    if (a.is_zero()) {
      switch (f) {
        case Builtin::Sin:
        case Builtin::Sinh: return Expr();
        case Builtin::Cos:
        case Builtin::Cosh:
        case Builtin::Exp: return Expr(1);
      }
    }
    return make_apply(f, a);
  }

  static Expr simplify(const Expr& e) {
    if (is_canonical(e)) return e;
    switch (e.kind()) {
      case Expr::Kind::Const:
      case Expr::Kind::Var: return e;
      case Expr::Kind::Sum: {
        std::vector<Expr> t;
        t.reserve(e.args().size());
        for (const Expr& a : e.args()) t.push_back(simplify(a));
        return add(t);
      }
      case Expr::Kind::Product: {
        std::vector<Expr> f;
        f.reserve(e.args().size());
        for (const Expr& a : e.args()) f.push_back(simplify(a));
        return mul(f);
      }
      case Expr::Kind::Power: return pow(simplify(e.args()[0]), e.exponent());
      case Expr::Kind::Quotient:
        return mul({simplify(e.args()[0]), pow(simplify(e.args()[1]), -1)});
      case Expr::Kind::Apply: return apply(e.builtin(), simplify(e.args()[0]));
    }
    return e;
  }
};

}  // namespace detail

Expr simplify(const Expr& e) { return detail::Canon::simplify(e); }

Expr operator+(const Expr& a, const Expr& b) {
  return detail::Canon::add({simplify(a), simplify(b)});
}
Expr operator-(const Expr& a, const Expr& b) {
  return detail::Canon::add({simplify(a), detail::Canon::mul({Expr(-1), simplify(b)})});
}
Expr operator-(const Expr& a) { return detail::Canon::mul({Expr(-1), simplify(a)}); }
Expr operator*(const Expr& a, const Expr& b) { return detail::Canon::mul({simplify(a), simplify(b)}); }
Expr operator/(const Expr& a, const Expr& b) {
  return detail::Canon::mul({simplify(a), detail::Canon::pow(simplify(b), -1)});
}
Expr pow(const Expr& base, int exponent) { return detail::Canon::pow(simplify(base), exponent); }
Expr sin(const Expr& a) { return detail::Canon::apply(Builtin::Sin, simplify(a)); }
Expr cos(const Expr& a) { return detail::Canon::apply(Builtin::Cos, simplify(a)); }
Expr exp(const Expr& a) { return detail::Canon::apply(Builtin::Exp, simplify(a)); }
Expr cosh(const Expr& a) { return detail::Canon::apply(Builtin::Cosh, simplify(a)); }
Expr sinh(const Expr& a) { return detail::Canon::apply(Builtin::Sinh, simplify(a)); }

bool canonically_equal(const Expr& a, const Expr& b) { return (a - b).is_zero(); }

}  // namespace paramech
