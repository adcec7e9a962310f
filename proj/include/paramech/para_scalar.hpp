#pragma once

// Split-complex ("para-complex") numbers a + b*j with j*j = +1.
//
// The ring A is isomorphic to R x R through the idempotent basis
//   e+ = (1 + j)/2,  e- = (1 - j)/2,
// so u = u+ e+ + u- e- with u+ = a + b and u- = a - b. Products and sums act
// channel by channel; zero divisors are exactly the elements with u+ = 0 or u- = 0.

#include <cmath>
#include <ostream>
#include <string>
#include <type_traits>

#include <gmpxx.h>

#include "paramech/errors.hpp"

namespace paramech {

using Rational = mpq_class;

/// Default modulus threshold for float-mode inversion.
inline constexpr double kDefaultEpsilon = 1e-12;

template <typename T>
class ParaScalar {
 public:
  using Scalar = T;

  ParaScalar() : re_(0), im_(0) {}
  explicit ParaScalar(T re) : re_(std::move(re)), im_(0) {}
  ParaScalar(T re, T im) : re_(std::move(re)), im_(std::move(im)) {}

  static ParaScalar zero() { return ParaScalar(T(0), T(0)); }
  static ParaScalar one() { return ParaScalar(T(1), T(0)); }
  static ParaScalar j() { return ParaScalar(T(0), T(1)); }
  static ParaScalar e_plus() { return ParaScalar(T(T(1) / T(2)), T(T(1) / T(2))); }
  static ParaScalar e_minus() { return ParaScalar(T(T(1) / T(2)), T(T(-1) / T(2))); }

  const T& re() const { return re_; }
  const T& im() const { return im_; }

  /// re^2 - im^2 = u+ * u-.
  T modulus() const { return T(re_ * re_ - im_ * im_); }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  ParaScalar& operator+=(const ParaScalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ParaScalar& operator-=(const ParaScalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ParaScalar& operator*=(const ParaScalar& o) {
    T r = T(re_ * o.re_ + im_ * o.im_);
    T i = T(re_ * o.im_ + im_ * o.re_);
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  ParaScalar& operator*=(const T& s) {
    re_ *= s;
    im_ *= s;
    return *this;
  }

  friend ParaScalar operator+(ParaScalar a, const ParaScalar& b) { return a += b; }
  friend ParaScalar operator-(ParaScalar a, const ParaScalar& b) { return a -= b; }
  friend ParaScalar operator*(ParaScalar a, const ParaScalar& b) { return a *= b; }
  friend ParaScalar operator*(ParaScalar a, const T& s) { return a *= s; }
  friend ParaScalar operator*(const T& s, ParaScalar a) { return a *= s; }
  friend ParaScalar operator-(const ParaScalar& a) { return ParaScalar(T(-a.re_), T(-a.im_)); }

  friend bool operator==(const ParaScalar& a, const ParaScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ParaScalar& a, const ParaScalar& b) { return !(a == b); }

 private:
  T re_;
  T im_;
};

using ExactPara = ParaScalar<Rational>;
using FloatPara = ParaScalar<double>;

/// Channel values of u = plus * e+ + minus * e-.
template <typename T>
struct ChannelPair {
  T plus;
  T minus;

  friend bool operator==(const ChannelPair& a, const ChannelPair& b) {
    return a.plus == b.plus && a.minus == b.minus;
  }
};

template <typename T>
ParaScalar<T> conj(const ParaScalar<T>& u) {
  return ParaScalar<T>(u.re(), T(-u.im()));
}

template <typename T>
ChannelPair<T> split(const ParaScalar<T>& u) {
  return {T(u.re() + u.im()), T(u.re() - u.im())};
}

template <typename T>
ParaScalar<T> from_channels(const ChannelPair<T>& c) {
  return ParaScalar<T>(T((c.plus + c.minus) / T(2)), T((c.plus - c.minus) / T(2)));
}

template <typename T>
ParaScalar<T> from_channels(const T& plus, const T& minus) {
  return from_channels(ChannelPair<T>{plus, minus});
}

/// Exact inverse conj(u)/modulus(u). Throws ZeroDivisorError on a null line.
inline ExactPara invert(const ExactPara& u) {
  Rational m = u.modulus();
  if (m == 0) throw ZeroDivisorError("para-complex zero divisor has no inverse");
  return ExactPara(Rational(u.re() / m), Rational(-u.im() / m));
}

inline FloatPara invert(const FloatPara& u, double epsilon = kDefaultEpsilon) {
  double m = u.modulus();
  if (!(std::abs(m) > epsilon)) throw ZeroDivisorError("para-complex zero divisor has no inverse");
  return FloatPara(u.re() / m, -u.im() / m);
}

/// Integer power; negative exponents go through invert().
template <typename T>
ParaScalar<T> pow(const ParaScalar<T>& base, int exponent) {
  ParaScalar<T> result = ParaScalar<T>::one();
  ParaScalar<T> b = exponent < 0 ? invert(base) : base;
  unsigned k = exponent < 0 ? unsigned(-exponent) : unsigned(exponent);
  while (k) {
    if (k & 1u) result *= b;
    b *= b;
    k >>= 1u;
  }
  return result;
}

/// exp(a + bj) = e^a (cosh b + j sinh b), computed per channel.
inline FloatPara exp(const FloatPara& u) {
  auto c = split(u);
  double p = std::exp(c.plus);
  double m = std::exp(c.minus);
  if (!std::isfinite(p) || !std::isfinite(m)) throw NumericRangeError("para-complex exp overflow");
  return from_channels(p, m);
}

/// Applies a real function to each channel.
template <typename F>
FloatPara map_channels(const FloatPara& u, F&& f) {
  auto c = split(u);
  return from_channels(f(c.plus), f(c.minus));
}

inline FloatPara to_float(const ExactPara& u) { return FloatPara(u.re().get_d(), u.im().get_d()); }

/// Exact rational from a double (shortest round-trip decimal, so 0.1 becomes 1/10).
Rational rational_from_double(double x);

/// Exact rational from a decimal literal such as "12", "0.25", "1e-3", "-2.5E+2".
Rational rational_from_decimal(const std::string& text);

std::string to_string(const Rational& q);
std::string to_string(const ExactPara& u);
std::string to_string(const FloatPara& u);

template <typename T>
std::ostream& operator<<(std::ostream& os, const ParaScalar<T>& u) {
  return os << to_string(u);
}

}  // namespace paramech
