#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "vlab/exact.hpp"

namespace vlab {

// Directed-rounding interval: lo rounded down, hi rounded up, so every
// operation encloses the true real result. Endpoints are dyadic (MPFR values),
// recoverable exactly as rationals.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = kDefaultPrec);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(Interval o);
  ~Interval();

  static constexpr mpfr_prec_t kDefaultPrec = 128;

  static Interval point(long v, mpfr_prec_t prec = kDefaultPrec);
  static Interval point(const Rational& v, mpfr_prec_t prec = kDefaultPrec);
  static Interval point(const Integer& v, mpfr_prec_t prec = kDefaultPrec);
  static Interval hull(const Rational& lo, const Rational& hi,
                       mpfr_prec_t prec = kDefaultPrec);
  static Interval hull(const Interval& a, const Interval& b);

  mpfr_prec_t precision() const { return prec_; }

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval operator/(const Interval& o) const;  // throws if o contains 0
  Interval operator-() const;

  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  Interval sqrt() const;   // requires lo >= 0
  Interval cbrt() const;
  Interval log() const;    // natural log, requires lo > 0
  Interval log2() const;   // requires lo > 0
  Interval exp2() const;
  Interval pow_int(long e) const;  // integer power; e < 0 requires 0 excluded
  Interval recip() const;

  // Accumulating sums at this interval's precision.
  void add_point_inplace(const Rational& v);
  void add_inplace(const Interval& o);

  bool contains_zero() const;
  int sign() const;  // -1 definitely negative, +1 definitely positive, 0 undecided
  bool definitely_lt(const Interval& o) const;   // hi < o.lo
  bool definitely_le(const Interval& o) const;   // hi <= o.lo
  bool definitely_gt(const Interval& o) const { return o.definitely_lt(*this); }
  bool contains(const Rational& v) const;

  Rational lower() const;  // exact dyadic endpoint
  Rational upper() const;
  double lower_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

  // Relative width (hi-lo)/max(1,|lo|), as a double upper estimate.
  double rel_width() const;

  std::string to_string(unsigned places = 6) const;  // "[lo, hi]" decimals

  mpfr_srcptr lo_raw() const { return lo_; }
  mpfr_srcptr hi_raw() const { return hi_; }

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace vlab
