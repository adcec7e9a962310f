#include <cmath>

#include "gtest/gtest.h"

#include "paramech/expr.hpp"
#include "paramech/random.hpp"

namespace paramech {
namespace {

const Expr z1{Symbol::z(1)};
const Expr zb1{Symbol::zb(1)};
const Expr z2{Symbol::z(2)};
const Expr j = Expr::j();

ExactPara q(long re, long im = 0) { return ExactPara(Rational(re), Rational(im)); }

TEST(Diff, Examples) {
  EXPECT_EQ(diff(pow(z1, 2) * zb1, Symbol::z(1)), 2 * z1 * zb1);
  EXPECT_TRUE(diff(pow(z1, 2), Symbol::zb(1)).is_zero());
  EXPECT_EQ(diff(cosh(z1), Symbol::z(1)), sinh(z1));
  EXPECT_EQ(diff(sin(z1 * zb1), Symbol::zb(1)), z1 * cos(z1 * zb1));
  EXPECT_EQ(diff(Expr(1) / z1, Symbol::z(1)), -Expr(1) / pow(z1, 2));
  EXPECT_EQ(diff(Expr::quotient(z1, zb1), Symbol::zb(1)), -z1 / pow(zb1, 2));
}

TEST(Diff, UnknownTagIsUsageError) {
  Symbol xi = Symbol::unknown("xi", 1, Channel::Plus);
  EXPECT_THROW(diff(Expr(xi) * z1, xi), UsageError);
  EXPECT_TRUE(diff(Expr(xi), Symbol::z(1)).is_zero());
}

TEST(Simplify, Examples) {
  EXPECT_EQ(simplify(Expr::sum({z1, z1})), simplify(Expr::product({Expr(2), z1})));
  Expr zero_divisor = Expr::product({Expr(q(1, 1)), Expr(q(1, -1)), z1});
  EXPECT_TRUE(simplify(zero_divisor).is_zero());
  EXPECT_TRUE((z1 * zb1 - zb1 * z1).is_zero());
  EXPECT_EQ(simplify(Expr::power(z1, 1)), z1);
  EXPECT_EQ(simplify(Expr::power(z1, 0)), Expr(1));
  EXPECT_EQ((z1 + 1) * (z1 - 1), pow(z1, 2) - 1);
  EXPECT_EQ(simplify(Expr::quotient(z1 + 1, z1 + 1)), Expr(1));
  EXPECT_EQ(simplify(Expr::quotient(2 * z1 + 2, z1 + 1)), Expr(2));
}

TEST(Simplify, CanonicalShapeInvariants) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Expr e = simplify(random_expression(rng, 2, 4));
    std::function<void(const Expr&)> check = [&](const Expr& x) {
      ASSERT_NE(x.kind(), Expr::Kind::Quotient);
      if (x.kind() == Expr::Kind::Power) {
        ASSERT_NE(x.exponent(), 0);
        ASSERT_NE(x.exponent(), 1);
      }
      if (x.kind() == Expr::Kind::Sum)
        for (const Expr& t : x.args()) ASSERT_NE(t.kind(), Expr::Kind::Sum);
      if (x.kind() == Expr::Kind::Product)
        for (std::size_t i = 1; i < x.args().size(); ++i) {
          ASSERT_NE(x.args()[i].kind(), Expr::Kind::Product);
          ASSERT_NE(x.args()[i].kind(), Expr::Kind::Const);
        }
      for (const Expr& a : x.args()) check(a);
    };
    check(e);
    ASSERT_EQ(simplify(e), e);
  }
}

TEST(Evaluate, Examples) {
  Environment<Rational> env{{Symbol::z(1), q(1, 1)}, {Symbol::zb(1), q(1, -1)}};
  EXPECT_EQ(evaluate(z1 * zb1, env), q(0));
  EXPECT_EQ(evaluate(pow(z1, 2), Environment<Rational>{{Symbol::z(1), q(2, 1)}}), q(5, 4));
  Expr mgh = Expr(Symbol::param("m")) * Expr(Symbol::param("g")) * Expr(Symbol::param("h"));
  Environment<Rational> p{{Symbol::param("m"), q(2)}, {Symbol::param("g"), q(10)}, {Symbol::param("h"), q(3)}};
  EXPECT_EQ(evaluate(mgh, p), q(60));
}

TEST(Evaluate, Errors) {
  EXPECT_THROW(evaluate(z1 * zb1, Environment<Rational>{{Symbol::z(1), q(1)}}), UsageError);
  Environment<Rational> env{{Symbol::z(1), q(1, 1)}};
  EXPECT_THROW(evaluate(Expr::quotient(Expr(1), z1), env), ZeroDivisorError);
  EXPECT_THROW(evaluate(sin(z1), Environment<Rational>{{Symbol::z(1), q(1)}}), UsageError);
}

TEST(Substitute, Examples) {
  Expr t{Symbol::time()};
  EXPECT_EQ(substitute(pow(z1, 2), {{Symbol::z(1), t}}), pow(t, 2));
  EXPECT_EQ(substitute(z1 * zb1, {{Symbol::zb(1), z1}}), pow(z1, 2));
  Expr L = z1 * zb1 + pow(z1, 3);
  EXPECT_EQ(substitute(diff(L, Symbol::z(1)), {}), diff(L, Symbol::z(1)));
  // simultaneous, capture free
  EXPECT_EQ(substitute(z1 - zb1, {{Symbol::z(1), zb1}, {Symbol::zb(1), z1}}), zb1 - z1);
}

TEST(Channels, ProjectionIsHomomorphism) {
  Expr e = (j + 2) * z1 * zb1 + sinh(j * z1);
  Expr plus = project_channel(e, Channel::Plus);
  Expr minus = project_channel(e, Channel::Minus);
  Expr zp{Symbol::z(1).in_channel(Channel::Plus)};
  Expr zbp{Symbol::zb(1).in_channel(Channel::Plus)};
  EXPECT_EQ(plus, 3 * zp * zbp + sinh(zp));
  EXPECT_TRUE(symbolically_equal(recombine_channels(plus, minus), e));
}

TEST(Render, Text) {
  EXPECT_EQ(to_string(-j * z1), "-j*z1");
  EXPECT_EQ(to_string(z1 * zb1), "z1*zb1");
  EXPECT_EQ(to_string(pow(z1 + 1, 2) / zb1 - 1), "-1 + 1/zb1 + 2*z1/zb1 + z1^2/zb1");
  EXPECT_EQ(to_string(Expr(ExactPara(Rational(1, 2), Rational(0))) * Expr(Symbol::param("m")) * pow(zb1, 2)),
            "1/2*m*zb1^2");
  EXPECT_EQ(to_string((2 + j) * z1), "(2 + j)*z1");
  EXPECT_EQ(to_string(j * Expr(Symbol::conj_velocity(1)) + zb1), "j*(dzb1/dt) + zb1");
  EXPECT_EQ(to_string(Expr(Symbol::z(1).in_channel(Channel::Plus))), "z1+");
  EXPECT_EQ(to_latex(Expr::e_plus() * zb1), "\\left(\\frac{1}{2} + \\frac{1}{2} \\mathbf{j}\\right) \\bar{z}_{1}");
}

TEST(SymxProperty, DiffMatchesFiniteDifferencesPerChannel) {
  Rng rng(21);
  const double h = 1e-5;
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Expr e = simplify(random_expression(rng, 2, 3));
    for (const Symbol& s : {Symbol::z(1), Symbol::zb(2)}) {
      Expr d = diff(e, s);
      for (int p = 0; p < 10; ++p) {
        std::uniform_real_distribution<double> u(0.5, 1.5);
        Environment<double> env;
        for (const Symbol& v : {Symbol::z(1), Symbol::zb(1), Symbol::z(2), Symbol::zb(2)})
          env[v] = from_channels(u(rng), u(rng));
        FloatPara exact;
        FloatPara fp, fm;
        try {
          exact = evaluate(d, env);
          for (Channel ch : {Channel::Plus, Channel::Minus}) {
            FloatPara step = ch == Channel::Plus ? from_channels(h, 0.0) : from_channels(0.0, h);
            Environment<double> up = env, down = env;
            up[s] = env[s] + step;
            down[s] = env[s] - step;
            fp = evaluate(e, up);
            fm = evaluate(e, down);
            auto fd = split(fp - fm);
            double numeric = (ch == Channel::Plus ? fd.plus : fd.minus) / (2 * h);
            double analytic = ch == Channel::Plus ? split(exact).plus : split(exact).minus;
            // Channels share the re/im representation, so the round-off floor of
            // the difference quotient is set by the larger channel of f.
            auto fc = split(evaluate(e, env));
            double scale = std::max({1.0, std::abs(analytic), std::abs(fc.plus), std::abs(fc.minus)});
            ASSERT_LE(std::abs(numeric - analytic), 1e-6 * scale)
                << to_string(e) << " wrt " << to_string(s);
            ++checked;
          }
        } catch (const ZeroDivisorError&) {
        }
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(SymxProperty, SimplifyPreservesValueExactly) {
  Rng rng(22);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Expr e = random_polynomial(rng, 2, 3, 4);
    Expr raw = Expr::product({Expr::sum({e, Expr(Symbol::z(1))}), Expr::quotient(e, Expr::sum({Expr(3), Expr(Symbol::zb(2))}))});
    Environment<Rational> env;
    for (const Symbol& v : {Symbol::z(1), Symbol::zb(1), Symbol::z(2), Symbol::zb(2)})
      env[v] = random_exact(rng);
    try {
      ExactPara a = evaluate(raw, env);
      ASSERT_EQ(a, evaluate(simplify(raw), env));
      ++checked;
    } catch (const ZeroDivisorError&) {
    }
  }
  EXPECT_GT(checked, 250);
}

TEST(SymxProperty, ClairautSymmetry) {
  Rng rng(23);
  const Symbol vars[] = {Symbol::z(1), Symbol::zb(1), Symbol::z(2), Symbol::zb(2)};
  for (int trial = 0; trial < 50; ++trial) {
    Expr e = random_polynomial(rng, 2, 4, 6);
    for (const Symbol& a : vars)
      for (const Symbol& b : vars) ASSERT_EQ(diff(diff(e, a), b), diff(diff(e, b), a));
  }
}

}  // namespace
}  // namespace paramech
