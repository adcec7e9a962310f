#include <cmath>
#include <functional>
#include <random>
#include <type_traits>

#include "gtest/gtest.h"

#include "paramech/para_scalar.hpp"

namespace paramech {
namespace {

ExactPara q(long re, long im = 0) { return ExactPara(Rational(re), Rational(im)); }

ExactPara random_exact(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 12);
  Rational re(num(rng), den(rng));
  Rational im(num(rng), den(rng));
  re.canonicalize();
  im.canonicalize();
  return ExactPara(re, im);
}

TEST(ParaScalar, ProductExamples) {
  EXPECT_EQ(q(1, 1) * q(1, -1), q(0));
  EXPECT_EQ(q(0, 1) * q(0, 1), q(1));
  // (2 + j)(3 + 2j) = 6 + 4j + 3j + 2j^2 = 8 + 7j
  EXPECT_EQ(q(2, 1) * q(3, 2), q(8, 7));
}

TEST(ParaScalar, Conjugation) {
  EXPECT_EQ(conj(q(3, 1)), q(3, -1));
  EXPECT_EQ(conj(ExactPara::j()), q(0, -1));
  EXPECT_EQ(conj(q(2, 1) * q(3, 2)), q(8, -7));
}

TEST(ParaScalar, Inversion) {
  ExactPara inv = invert(q(2, 1));
  EXPECT_EQ(inv, ExactPara(Rational(2, 3), Rational(-1, 3)));
  EXPECT_EQ(inv * q(2, 1), ExactPara::one());
  EXPECT_THROW(invert(q(1, 1)), ZeroDivisorError);
  EXPECT_EQ(invert(q(1)), q(1));

  EXPECT_THROW(invert(FloatPara(1.0, 1.0 - 1e-15)), ZeroDivisorError);
  EXPECT_NO_THROW(invert(FloatPara(1.0, 1.0 - 1e-15), 0.0));
}

TEST(ParaScalar, SplitAndRecombine) {
  EXPECT_EQ(split(q(3, 1)), (ChannelPair<Rational>{4, 2}));
  EXPECT_EQ(split(ExactPara::e_plus()), (ChannelPair<Rational>{1, 0}));
  EXPECT_EQ(split(ExactPara::e_minus()), (ChannelPair<Rational>{0, 1}));
  EXPECT_EQ(from_channels(ChannelPair<Rational>{4, 2}), q(3, 1));
}

TEST(ParaScalar, IdempotentIdentities) {
  const ExactPara ep = ExactPara::e_plus();
  const ExactPara em = ExactPara::e_minus();
  EXPECT_EQ(ep * ep, ep);
  EXPECT_EQ(em * em, em);
  EXPECT_EQ(ep * em, ExactPara::zero());
  EXPECT_EQ(ep + em, ExactPara::one());
  EXPECT_EQ(ep - em, ExactPara::j());
}

TEST(ParaScalar, Exponential) {
  EXPECT_EQ(exp(FloatPara(0.0, 0.0)), FloatPara(1.0, 0.0));
  FloatPara ej = exp(FloatPara(0.0, 1.0));
  const double e = std::exp(1.0);
  EXPECT_NEAR(ej.re(), (e + 1.0 / e) / 2.0, 1e-15);
  EXPECT_NEAR(ej.im(), (e - 1.0 / e) / 2.0, 1e-15);
  EXPECT_NEAR(ej.re(), 1.5430806, 1e-7);
  EXPECT_NEAR(ej.im(), 1.1752012, 1e-7);

  auto c = split(exp(FloatPara(1.0, 2.0)));
  EXPECT_NEAR(c.plus, std::exp(3.0), 1e-12);
  EXPECT_NEAR(c.minus, std::exp(-1.0), 1e-15);

  EXPECT_THROW(exp(FloatPara(800.0, 0.0)), NumericRangeError);
}

TEST(ParaScalar, ModesDoNotMix) {
  static_assert(!std::is_invocable_v<std::plus<>, ExactPara, FloatPara>);
  static_assert(!std::is_invocable_v<std::multiplies<>, FloatPara, ExactPara>);
  static_assert(!std::is_convertible_v<FloatPara, ExactPara>);
  static_assert(!std::is_convertible_v<ExactPara, FloatPara>);
}

TEST(ParaScalar, DecimalParsing) {
  EXPECT_EQ(rational_from_decimal("0.1"), Rational(1, 10));
  EXPECT_EQ(rational_from_decimal("-2.5e2"), Rational(-250));
  EXPECT_EQ(rational_from_decimal("1e-3"), Rational(1, 1000));
  EXPECT_EQ(rational_from_double(0.1), Rational(1, 10));
  EXPECT_THROW(rational_from_decimal("1.2.3"), UsageError);
  EXPECT_THROW(rational_from_decimal("e5"), UsageError);
}

TEST(ParaScalarProperty, RingAxiomsExact) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    ExactPara a = random_exact(rng), b = random_exact(rng), c = random_exact(rng);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a + ExactPara::zero(), a);
    ASSERT_EQ(a * ExactPara::one(), a);
    ASSERT_EQ(a + (-a), ExactPara::zero());
  }
}

TEST(ParaScalarProperty, RingAxiomsFloat) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(-10, 10);
  auto near = [](const FloatPara& x, const FloatPara& y) {
    double scale = std::max({1.0, std::abs(x.re()), std::abs(x.im())});
    return std::abs(x.re() - y.re()) <= 1e-12 * scale && std::abs(x.im() - y.im()) <= 1e-12 * scale;
  };
  for (int trial = 0; trial < 500; ++trial) {
    FloatPara a(d(rng), d(rng)), b(d(rng), d(rng)), c(d(rng), d(rng));
    ASSERT_TRUE(near((a * b) * c, a * (b * c)));
    ASSERT_TRUE(near(a * (b + c), a * b + a * c));
  }
}

TEST(ParaScalarProperty, ChannelHomomorphism) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    ExactPara u = random_exact(rng), v = random_exact(rng);
    auto su = split(u), sv = split(v);
    ASSERT_EQ(split(u * v), (ChannelPair<Rational>{su.plus * sv.plus, su.minus * sv.minus}));
    ASSERT_EQ(split(u + v), (ChannelPair<Rational>{su.plus + sv.plus, su.minus + sv.minus}));
    ASSERT_EQ(split(conj(u)), (ChannelPair<Rational>{su.minus, su.plus}));
    ASSERT_EQ(from_channels(split(u)), u);
    ASSERT_EQ(conj(u * v), conj(u) * conj(v));
    if (u.modulus() != 0) ASSERT_EQ(invert(u) * u, ExactPara::one());
  }
}

}  // namespace
}  // namespace paramech
