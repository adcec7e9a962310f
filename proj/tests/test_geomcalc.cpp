#include "gtest/gtest.h"

#include "paramech/forms.hpp"
#include "paramech/random.hpp"

namespace paramech {
namespace {

const Expr z1{Symbol::z(1)};
const Expr zb1{Symbol::zb(1)};
const Expr j = Expr::j();

DiffForm dz1() { return DiffForm::dz(1, 1); }
DiffForm dzb1() { return DiffForm::dzb(1, 1); }
VecField d_z1() { return VecField::basis(1, basis::z(1)); }
VecField d_zb1() { return VecField::basis(1, basis::zb(1)); }

TEST(Forms, Wedge) {
  EXPECT_TRUE(wedge(dz1(), dz1()).is_zero());
  EXPECT_EQ(wedge(dz1(), dzb1()), -wedge(dzb1(), dz1()));
  EXPECT_EQ(wedge(z1 * dz1(), zb1 * dzb1()), (z1 * zb1) * wedge(dz1(), dzb1()));
  DiffForm f(1, 2);
  f.add_term({basis::zb(1), basis::z(1)}, Expr(1));
  EXPECT_EQ(f.coefficient({0, 1}), Expr(-1));
}

TEST(Forms, ExteriorDerivative) {
  EXPECT_EQ(exterior_d(z1 * dzb1()), wedge(dz1(), dzb1()));
  EXPECT_TRUE(exterior_d(dz1()).is_zero());
  EXPECT_EQ(exterior_d(z1 * zb1, 1), zb1 * dz1() + z1 * dzb1());
}

TEST(Forms, Interior) {
  DiffForm w = wedge(dz1(), dzb1());
  EXPECT_EQ(interior(d_z1(), w), dzb1());
  EXPECT_EQ(interior(d_zb1(), w), -dz1());
  Expr a{Symbol::param("a")}, b{Symbol::param("b")};
  VecField xi = a * d_z1() + b * d_zb1();
  EXPECT_EQ(interior(xi, wedge(dzb1(), dz1())), b * dz1() - a * dzb1());
  EXPECT_THROW(interior(xi, DiffForm::scalar(1, z1)), UsageError);
}

TEST(Forms, EvaluateOnVectors) {
  DiffForm w = wedge(dz1(), dzb1());
  EXPECT_EQ(evaluate_form(w, {d_z1(), d_zb1()}), Expr(1));
  EXPECT_EQ(evaluate_form(w, {d_zb1(), d_z1()}), Expr(-1));
}

TEST(Structure, BasisActions) {
  EXPECT_EQ(apply_structure(StructureOp::J, d_z1()), -j * d_z1());
  EXPECT_EQ(apply_structure(StructureOp::Jstar, dzb1()), j * dzb1());
  EXPECT_EQ(apply_structure(StructureOp::Pplus, d_z1()), Expr::e_minus() * d_z1());
  EXPECT_EQ(apply_structure(StructureOp::Pplus, d_zb1()), Expr::e_plus() * d_zb1());
  EXPECT_THROW(apply_structure(StructureOp::Jstar, d_z1()), UsageError);
  EXPECT_THROW(apply_structure(StructureOp::J, dz1()), UsageError);
}

TEST(Structure, VerticalDerivation) {
  EXPECT_EQ(vertical_derivation(dz1()), -j * dz1());
  EXPECT_TRUE(vertical_derivation(DiffForm::scalar(1, z1)).is_zero());
  EXPECT_TRUE(vertical_derivation(wedge(dz1(), dzb1())).is_zero());
}

TEST(Structure, VerticalDifferential) {
  DiffForm expected = j * (-zb1 * dz1() + z1 * dzb1());
  EXPECT_EQ(vertical_differential(DiffForm::scalar(1, z1 * zb1)), expected);
  EXPECT_EQ(vertical_differential_closed_form(z1 * zb1, 1), expected);
  EXPECT_TRUE(vertical_differential(DiffForm::scalar(1, Expr(7))).is_zero());
  EXPECT_EQ(vertical_differential(DiffForm::scalar(1, z1)), -j * dz1());
}

TEST(Brackets, Examples) {
  EXPECT_TRUE(lie_bracket(d_z1(), d_zb1()).is_zero());
  EXPECT_EQ(lie_bracket(z1 * d_z1(), d_z1()), -d_z1());
  EXPECT_TRUE(nijenhuis(d_z1(), d_zb1()).is_zero());
  VecField bad(1);
  bad.set(0, Expr(Symbol::unknown("xi", 1, Channel::Plus)));
  EXPECT_THROW(lie_bracket(bad, d_z1()), UsageError);
}

TEST(MetricTest, Compatibility) {
  Metric g = Metric::flat(1);
  EXPECT_TRUE(compatibility_check(g));
  EXPECT_EQ(fundamental_two_form(g), (j * Expr(ExactPara(Rational(1, 2), Rational(0)))) * wedge(dz1(), dzb1()));
  Metric bad = Metric::flat(1);
  bad.set(basis::z(1), basis::z(1), ExactPara::one());
  EXPECT_FALSE(compatibility_check(bad));
  // The defect on (d/dz1, d/dz1) is -2j * g11.
  EXPECT_EQ(bad(0, 0) * structure_multiplier(StructureOp::Pdiff, 0) * ExactPara(Rational(2), Rational(0)),
            ExactPara(Rational(0), Rational(-2)));
}

// ---- properties --------------------------------------------------------------

TEST(GeomProperty, DSquaredIsZero) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    int grade = trial % 2;
    DiffForm w = random_form(rng, 2, grade, 4, 3);
    ASSERT_TRUE(exterior_d(exterior_d(w)).is_zero());
  }
}

TEST(GeomProperty, OperatorIdentities) {
  Rng rng(32);
  auto P = [](StructureOp op, const VecField& x) { return apply_structure(op, x); };
  for (int trial = 0; trial < 100; ++trial) {
    VecField x = random_vecfield(rng, 2, 2, 2);
    VecField pp = P(StructureOp::Pplus, x), pm = P(StructureOp::Pminus, x);
    ASSERT_EQ(P(StructureOp::Pplus, pp), pp);
    ASSERT_EQ(P(StructureOp::Pminus, pm), pm);
    ASSERT_TRUE(P(StructureOp::Pplus, pm).is_zero());
    ASSERT_EQ(pp + pm, x);
    ASSERT_EQ(pp - pm, P(StructureOp::J, x));
    ASSERT_EQ(P(StructureOp::J, P(StructureOp::J, x)), x);
  }
}

TEST(GeomProperty, VerticalDifferentialPathsAgree) {
  Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    Expr f = random_polynomial(rng, 2, 4, 5);
    ASSERT_EQ(vertical_differential(DiffForm::scalar(2, f)), vertical_differential_closed_form(f, 2));
  }
}

TEST(GeomProperty, InteriorIsAntiderivation) {
  Rng rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    VecField x = random_vecfield(rng, 2, 2, 2);
    DiffForm a = random_form(rng, 2, 1, 2, 2), b = random_form(rng, 2, 1, 2, 2);
    DiffForm lhs = interior(x, wedge(a, b));
    DiffForm rhs = wedge(interior(x, a), b) - wedge(a, interior(x, b));
    ASSERT_EQ(lhs, rhs);
  }
}

TEST(GeomProperty, BracketAntisymmetryAndJacobi) {
  Rng rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    VecField x = random_vecfield(rng, 2, 2, 2), y = random_vecfield(rng, 2, 2, 2), z = random_vecfield(rng, 2, 1, 2);
    ASSERT_EQ(lie_bracket(x, y), -lie_bracket(y, x));
    VecField jac = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) + lie_bracket(z, lie_bracket(x, y));
    ASSERT_TRUE(jac.is_zero());
  }
}

TEST(GeomProperty, FlatNijenhuisVanishes) {
  Rng rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    VecField x = random_vecfield(rng, 2, 3, 2), y = random_vecfield(rng, 2, 3, 2);
    ASSERT_TRUE(nijenhuis(x, y).is_zero());
    ASSERT_TRUE(nijenhuis(x, x).is_zero());
  }
}

TEST(GeomProperty, FundamentalFormIsSkew) {
  Rng rng(37);
  DiffForm phi = fundamental_two_form(Metric::flat(2));
  Metric g = Metric::flat(2);
  for (int trial = 0; trial < 20; ++trial) {
    VecField x = random_vecfield(rng, 2, 1, 2), y = random_vecfield(rng, 2, 1, 2);
    ASSERT_EQ(evaluate_form(phi, {x, y}), -evaluate_form(phi, {y, x}));
    ASSERT_EQ(evaluate_form(phi, {x, y}), g.evaluate(x, apply_structure(StructureOp::J, y)));
  }
}

}  // namespace
}  // namespace paramech
