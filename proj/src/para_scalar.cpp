#include "paramech/para_scalar.hpp"

#include <charconv>
#include <cctype>

namespace paramech {

Rational rational_from_decimal(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw UsageError("malformed decimal literal '" + text + "'");
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    long e = 0;
    bool exp_digit = false;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
      e = e * 10 + (text[pos] - '0');
      exp_digit = true;
      if (e > 100000) throw UsageError("decimal exponent out of range in '" + text + "'");
    }
    if (!exp_digit) throw UsageError("malformed decimal exponent in '" + text + "'");
    scale += exp_negative ? -e : e;
  }
  if (pos != text.size()) throw UsageError("malformed decimal literal '" + text + "'");

  mpz_class num(digits, 10);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational q = scale < 0 ? Rational(num, ten_pow) : Rational(num * ten_pow);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw NumericRangeError("cannot represent a non-finite value exactly");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return rational_from_decimal(std::string(buf, res.ptr));
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const ExactPara& u) {
  if (u.im() == 0) return to_string(u.re());
  std::string im = u.im() == 1 ? "j" : u.im() == -1 ? "-j" : to_string(u.im()) + "*j";
  if (u.re() == 0) return im;
  if (u.im() < 0) return to_string(u.re()) + " - " + im.substr(1);
  return to_string(u.re()) + " + " + im;
}

std::string to_string(const FloatPara& u) {
  char re[32];
  char im[32];
  auto r1 = std::to_chars(re, re + sizeof re, u.re());
  auto r2 = std::to_chars(im, im + sizeof im, std::abs(u.im()));
  return std::string(re, r1.ptr) + (std::signbit(u.im()) ? " - " : " + ") + std::string(im, r2.ptr) + "*j";
}

}  // namespace paramech
