#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace vlab {

// All exactly-computed quantities are mpq_class rationals, canonicalized
// (denominator > 0, gcd 1) after every operation by GMP itself.
using Rational = mpq_class;
using Integer = mpz_class;

enum class Ordering { Less, Equal, Greater };

struct RationalBounds {
  Rational lo;
  Rational hi;
};

// Exact ordering of x vs c * delta^(13/3), decided by comparing x^3 with
// c^3 * delta^13 in integers. Requires x >= 0, c > 0, delta >= 2.
Ordering cmp_pow_13_3(const Rational& x, const Rational& c, unsigned long delta);

// lo^2 <= x <= hi^2 with hi - lo <= 2^-precision * max(1, hi). Throws on x < 0.
RationalBounds sqrt_bounds(const Rational& x, unsigned precision);

// Rational enclosure of x^(1/3), x >= 0, relative width <= 2^-precision.
RationalBounds cbrt_bounds(const Rational& x, unsigned precision);

// Rational enclosure of 2^(e/3), relative width <= 2^-precision.
RationalBounds pow2_cuberoot_bounds(unsigned long e, unsigned precision);

// Enclosure of delta^(13/3) for integer delta >= 1 (exact when delta is a cube).
RationalBounds pow_13_3_bounds(unsigned long delta, unsigned precision);

enum class RenderMode { Truncate, Round };

// Decimal rendering with the requested number of places. Truncation (toward
// zero) matches the table convention used throughout the reports.
std::string decimal_render(const Rational& x, unsigned places, RenderMode mode);

// Smallest decimal with the given number of places that is >= x.
std::string decimal_upper(const Rational& x, unsigned places);

// Parses "p/q", "18", or a plain decimal such as "1.99" (exactly, as 199/100).
Rational parse_rational(const std::string& s);

// floor(x) as an integer.
Integer floor_q(const Rational& x);

}  // namespace vlab
