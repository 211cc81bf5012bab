#include "vlab/exact.hpp"

#include <cctype>

namespace vlab {

namespace {

// floor of the nth root of a nonnegative rational a/b, i.e. floor((a/b)^(1/n)).
// Uses floor(root(floor(a/b))): correct since no integer nth power can lie
// strictly between floor(a/b) and a/b.
Integer floor_nth_root(const Integer& num, const Integer& den, unsigned n) {
  Integer q = num / den;  // floor, operands nonnegative
  Integer r;
  mpz_root(r.get_mpz_t(), q.get_mpz_t(), n);
  return r;
}

}  // namespace

Integer floor_q(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return r;
}

Ordering cmp_pow_13_3(const Rational& x, const Rational& c, unsigned long delta) {
  if (sgn(x) < 0 || sgn(c) <= 0 || delta < 2) {
    throw std::invalid_argument("cmp_pow_13_3: need x >= 0, c > 0, delta >= 2");
  }
  // x <=> c * delta^(13/3)  <=>  x^3 <=> c^3 * delta^13 (both sides >= 0)
  Rational x3 = x * x * x;
  Integer d13;
  mpz_ui_pow_ui(d13.get_mpz_t(), delta, 13);
  Rational rhs = c * c * c * Rational(d13);
  int s = cmp(x3, rhs);
  if (s < 0) return Ordering::Less;
  if (s > 0) return Ordering::Greater;
  return Ordering::Equal;
}

RationalBounds sqrt_bounds(const Rational& x, unsigned precision) {
  if (sgn(x) < 0) throw std::invalid_argument("sqrt_bounds: negative input");
  // sqrt(p/q) = sqrt(p*q)/q; scale by 2^(2m) so the width is 1/(q*2^m) <= 2^-m.
  const Integer& p = x.get_num();
  const Integer& q = x.get_den();
  Integer scaled = p * q;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * precision);
  Integer s;
  bool exact = mpz_root(s.get_mpz_t(), scaled.get_mpz_t(), 2) != 0;
  Integer den = q;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), precision);
  Rational lo(s, den);
  lo.canonicalize();
  if (exact) return {lo, lo};
  Rational hi(s + 1, den);
  hi.canonicalize();
  return {lo, hi};
}

RationalBounds cbrt_bounds(const Rational& x, unsigned precision) {
  if (sgn(x) < 0) throw std::invalid_argument("cbrt_bounds: negative input");
  // cbrt(p/q) = cbrt(p*q^2)/q, scaled by 2^(3m).
  const Integer& p = x.get_num();
  const Integer& q = x.get_den();
  Integer scaled = p * q * q;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 3 * precision);
  Integer c;
  bool exact = mpz_root(c.get_mpz_t(), scaled.get_mpz_t(), 3) != 0;
  Integer den = q;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), precision);
  Rational lo(c, den);
  lo.canonicalize();
  if (exact) return {lo, lo};
  Rational hi(c + 1, den);
  hi.canonicalize();
  return {lo, hi};
}

RationalBounds pow2_cuberoot_bounds(unsigned long e, unsigned precision) {
  unsigned long w = e / 3, t = e % 3;
  Integer two_w;
  mpz_ui_pow_ui(two_w.get_mpz_t(), 2, w);
  if (t == 0) {
    Rational v(two_w);
    return {v, v};
  }
  Integer scaled;
  mpz_ui_pow_ui(scaled.get_mpz_t(), 2, t + 3ul * precision);
  Integer c;
  mpz_root(c.get_mpz_t(), scaled.get_mpz_t(), 3);  // never exact for t in {1,2}
  Integer den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), precision);
  Rational lo(two_w * c, den);
  Rational hi(two_w * (c + 1), den);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

RationalBounds pow_13_3_bounds(unsigned long delta, unsigned precision) {
  Integer d13;
  mpz_ui_pow_ui(d13.get_mpz_t(), delta, 13);
  return cbrt_bounds(Rational(d13), precision);
}

std::string decimal_render(const Rational& x, unsigned places, RenderMode mode) {
  Integer pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, places);
  Rational scaled = x * Rational(pow10);
  Integer digits;
  bool neg = sgn(x) < 0;
  if (mode == RenderMode::Truncate) {
    // toward zero
    mpz_tdiv_q(digits.get_mpz_t(), scaled.get_num().get_mpz_t(),
               scaled.get_den().get_mpz_t());
    if (neg) digits = -digits;
  } else {
    Rational mag = neg ? -scaled : scaled;
    mag += Rational(1, 2);
    digits = floor_q(mag);
  }
  std::string s = digits.get_str();
  if (places > 0) {
    if (s.size() <= places) s.insert(0, places + 1 - s.size(), '0');
    s.insert(s.size() - places, ".");
  }
  if (neg && digits != 0) s.insert(0, "-");
  return s;
}

std::string decimal_upper(const Rational& x, unsigned places) {
  Integer pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, places);
  Rational scaled = x * Rational(pow10);
  Integer digits;
  mpz_cdiv_q(digits.get_mpz_t(), scaled.get_num().get_mpz_t(),
             scaled.get_den().get_mpz_t());
  bool neg = sgn(digits) < 0;
  Integer mag = neg ? Integer(-digits) : digits;
  std::string s = mag.get_str();
  if (places > 0) {
    if (s.size() <= places) s.insert(0, places + 1 - s.size(), '0');
    s.insert(s.size() - places, ".");
  }
  if (neg) s.insert(0, "-");
  return s;
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) {
      throw std::invalid_argument("parse_rational: bad rational: " + s);
    }
    if (sgn(Integer(r.get_den())) == 0) {
      throw std::invalid_argument("parse_rational: zero denominator: " + s);
    }
    r.canonicalize();
    return r;
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    return Rational(Integer(s));
  }
  std::string intpart = s.substr(0, dot);
  std::string fracpart = s.substr(dot + 1);
  bool neg = !intpart.empty() && intpart[0] == '-';
  if (neg) intpart = intpart.substr(1);
  if (intpart.empty()) intpart = "0";
  for (char ch : intpart + fracpart) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw std::invalid_argument("parse_rational: bad decimal: " + s);
    }
  }
  Integer num(intpart + fracpart);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, fracpart.size());
  Rational r(num, den);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

}  // namespace vlab
