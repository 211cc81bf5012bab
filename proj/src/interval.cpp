#include "vlab/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace vlab {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(Interval o) {
  std::swap(prec_, o.prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::point(long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::point(const Rational& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::point(const Integer& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator+(const Interval& o) const {
  Interval r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  Interval r(std::max(prec_, o.prec_));
  // Fast path: both nonnegative.
  if (mpfr_sgn(lo_) >= 0 && mpfr_sgn(o.lo_) >= 0) {
    mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
  }
  mpfr_t t, best_lo, best_hi;
  mpfr_init2(t, r.prec_);
  mpfr_init2(best_lo, r.prec_);
  mpfr_init2(best_hi, r.prec_);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {o.lo_, o.hi_};
  bool first = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(t, a[i], b[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, best_lo) < 0) mpfr_set(best_lo, t, MPFR_RNDD);
      mpfr_mul(t, a[i], b[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, best_hi) > 0) mpfr_set(best_hi, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_set(r.lo_, best_lo, MPFR_RNDD);
  mpfr_set(r.hi_, best_hi, MPFR_RNDU);
  mpfr_clear(t);
  mpfr_clear(best_lo);
  mpfr_clear(best_hi);
  return r;
}

Interval Interval::operator/(const Interval& o) const {
  if (o.contains_zero()) throw std::domain_error("Interval: division by interval containing 0");
  Interval r(std::max(prec_, o.prec_));
  if (mpfr_sgn(lo_) >= 0 && mpfr_sgn(o.lo_) > 0) {
    mpfr_div(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_div(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
  }
  mpfr_t t, best_lo, best_hi;
  mpfr_init2(t, r.prec_);
  mpfr_init2(best_lo, r.prec_);
  mpfr_init2(best_hi, r.prec_);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {o.lo_, o.hi_};
  bool first = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_div(t, a[i], b[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, best_lo) < 0) mpfr_set(best_lo, t, MPFR_RNDD);
      mpfr_div(t, a[i], b[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, best_hi) > 0) mpfr_set(best_hi, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_set(r.lo_, best_lo, MPFR_RNDD);
  mpfr_set(r.hi_, best_hi, MPFR_RNDU);
  mpfr_clear(t);
  mpfr_clear(best_lo);
  mpfr_clear(best_hi);
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw std::domain_error("Interval::sqrt: negative");
  Interval r(prec_);
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::cbrt() const {
  Interval r(prec_);
  mpfr_cbrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_cbrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0) throw std::domain_error("Interval::log: nonpositive");
  Interval r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log2() const {
  if (mpfr_sgn(lo_) <= 0) throw std::domain_error("Interval::log2: nonpositive");
  Interval r(prec_);
  mpfr_log2(r.lo_, lo_, MPFR_RNDD);
  mpfr_log2(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp2() const {
  Interval r(prec_);
  mpfr_exp2(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp2(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::recip() const {
  return Interval::point(1L, prec_) / *this;
}

Interval Interval::pow_int(long e) const {
  if (e < 0) return recip().pow_int(-e);
  Interval acc = Interval::point(1L, prec_);
  Interval base = *this;
  unsigned long u = static_cast<unsigned long>(e);
  while (u) {
    if (u & 1) acc = acc * base;
    u >>= 1;
    if (u) base = base * base;
  }
  return acc;
}

void Interval::add_point_inplace(const Rational& v) {
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_set_q(t, v.get_mpq_t(), MPFR_RNDD);
  mpfr_add(lo_, lo_, t, MPFR_RNDD);
  mpfr_set_q(t, v.get_mpq_t(), MPFR_RNDU);
  mpfr_add(hi_, hi_, t, MPFR_RNDU);
  mpfr_clear(t);
}

void Interval::add_inplace(const Interval& o) {
  mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

int Interval::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  return 0;
}

bool Interval::definitely_lt(const Interval& o) const {
  return mpfr_cmp(hi_, o.lo_) < 0;
}

bool Interval::definitely_le(const Interval& o) const {
  return mpfr_cmp(hi_, o.lo_) <= 0;
}

bool Interval::contains(const Rational& v) const {
  return mpfr_cmp_q(lo_, v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, v.get_mpq_t()) >= 0;
}

Rational Interval::lower() const {
  if (!mpfr_number_p(lo_)) throw std::domain_error("Interval::lower: not finite");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rational Interval::upper() const {
  if (!mpfr_number_p(hi_)) throw std::domain_error("Interval::upper: not finite");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

double Interval::rel_width() const {
  double w = mpfr_get_d(hi_, MPFR_RNDU) - mpfr_get_d(lo_, MPFR_RNDD);
  double m = std::max(1.0, std::abs(mpfr_get_d(lo_, MPFR_RNDN)));
  return w / m;
}

std::string Interval::to_string(unsigned places) const {
  return "[" + decimal_render(lower(), places, RenderMode::Truncate) + ", " +
         decimal_render(upper(), places, RenderMode::Round) + "]";
}

}  // namespace vlab
