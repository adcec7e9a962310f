#include "paramech/random.hpp"

namespace paramech {

ExactPara random_exact(Rng& rng, long max_numerator, long max_denominator) {
  std::uniform_int_distribution<long> num(-max_numerator, max_numerator);
  std::uniform_int_distribution<long> den(1, max_denominator);
  Rational re(num(rng), den(rng));
  Rational im(num(rng), den(rng));
  re.canonicalize();
  im.canonicalize();
  return ExactPara(re, im);
}

namespace {

Symbol random_coordinate(Rng& rng, int dim) {
  std::uniform_int_distribution<int> idx(1, dim);
  std::bernoulli_distribution bar(0.5);
  int i = idx(rng);
  return bar(rng) ? Symbol::zb(i) : Symbol::z(i);
}

}  // namespace

Expr random_polynomial(Rng& rng, int dim, int max_degree, int terms) {
  std::uniform_int_distribution<int> degree(0, max_degree);
  std::vector<Expr> out;
  for (int t = 0; t < terms; ++t) {
    std::vector<Expr> factors{Expr(random_exact(rng))};
    int d = degree(rng);
    for (int k = 0; k < d; ++k) factors.push_back(Expr(random_coordinate(rng, dim)));
    out.push_back(Expr::product(std::move(factors)));
  }
  return simplify(Expr::sum(std::move(out)));
}

Expr random_expression(Rng& rng, int dim, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  switch (pick(rng)) {
    case 0: return Expr(random_exact(rng));
    case 1: return Expr(random_coordinate(rng, dim));
    case 2: return Expr::sum({random_expression(rng, dim, depth - 1), random_expression(rng, dim, depth - 1)});
    case 3:
    case 4:
      return Expr::product({random_expression(rng, dim, depth - 1), random_expression(rng, dim, depth - 1)});
    case 5: {
      std::uniform_int_distribution<int> k(2, 3);
      return Expr::power(random_expression(rng, dim, depth - 1), k(rng));
    }
    case 6: {
      // 1 + x^2 style denominators keep both channels positive.
      Expr x = Expr(random_coordinate(rng, dim));
      return Expr::quotient(random_expression(rng, dim, depth - 1), Expr::sum({Expr(2), Expr::power(x, 2)}));
    }
    default: {
      std::uniform_int_distribution<int> f(0, 4);
      return Expr::apply(static_cast<Builtin>(f(rng)), random_expression(rng, dim, depth - 1));
    }
  }
}

VecField random_vecfield(Rng& rng, int dim, int max_degree, int terms) {
  VecField x(dim);
  for (BasisId a = 0; a < basis::count(dim); ++a) x.set(a, random_polynomial(rng, dim, max_degree, terms));
  return x;
}

DiffForm random_form(Rng& rng, int dim, int grade, int max_degree, int terms) {
  std::uniform_int_distribution<int> id(0, basis::count(dim) - 1);
  DiffForm out(dim, grade);
  for (int k = 0; k < basis::count(dim); ++k) {
    DiffForm::Index ids;
    for (int g = 0; g < grade; ++g) ids.push_back(id(rng));
    out.add_term(std::move(ids), random_polynomial(rng, dim, max_degree, terms));
  }
  return out;
}

}  // namespace paramech
