#pragma once

#include <string>
#include <vector>

#include "vlab/exact.hpp"
#include "vlab/interval.hpp"

namespace vlab::asymptotic {

constexpr unsigned long kRegimeStart = 300000;  // large-delta regime threshold

struct AsymptoticParams {
  Interval lambda;  // cbrt(2/3)
  Interval r;       // lambda * delta^(1/3)
  Interval beta;    // delta/(delta-1)
  Interval gamma;   // r/(r-1)
};

AsymptoticParams make_params(const Integer& delta,
                             mpfr_prec_t prec = Interval::kDefaultPrec);

// Enclosure of cbrt(2/3).
Interval lambda_optimum(mpfr_prec_t prec = Interval::kDefaultPrec);

// g(lambda) = 1/(2 lambda^2) + 3 lambda / 2.
Interval lambda_objective(const Interval& lam);

struct IntegralBounds {
  Interval b1;  // upper bound on delta^5 c1
  Interval b2;  // upper bound on 3 delta^4 c2
  Interval b3;  // upper bound on delta^3 c3
  Interval b4;  // upper bound on -(3/4) delta^2 c4
};

// Integral-comparison right-hand sides, with floor(r) = r_floor.
IntegralBounds integral_upper_bounds(unsigned long delta, long r_floor,
                                     mpfr_prec_t prec = Interval::kDefaultPrec);

// Full right-hand side of the large-delta bound on F. Requires
// delta >= kRegimeStart.
Interval gold_rhs(const Integer& delta, mpfr_prec_t prec = Interval::kDefaultPrec);

// Leading coefficient gamma^2/(2 lambda^2) + 3 lambda / 2.
Interval leading_coefficient(const Interval& gamma, const Interval& lambda);

enum class TailVerdict { Certified, Failed, Inconclusive };

struct TailGridPoint {
  Integer delta;
  std::string ratio_hi;  // decimal upper bound of F/delta^(13/3) at this point
};

struct TailReport {
  Integer delta_start;
  Rational constant;
  TailVerdict verdict = TailVerdict::Inconclusive;
  std::vector<TailGridPoint> grid;
  Integer failed_at;  // grid point where certification failed, if any
};

// Certifies gold_rhs(delta) <= constant * delta^(13/3) for all
// delta >= delta_start: interval evaluation over each doubling segment
// [g_i, g_{i+1}], g_i = delta_start * 2^i, i <= 64, plus the open tail.
TailReport verify_tail(const Rational& constant, const Integer& delta_start,
                       mpfr_prec_t prec = Interval::kDefaultPrec);

// Upper bound on gamma(M)^2/(2 lambda^2) + 3 lambda/2 with r = lambda M^(1/3).
Interval projected_constant(const Integer& sweep_limit,
                            mpfr_prec_t prec = Interval::kDefaultPrec);

// true iff delta / (floor(lambda delta^(1/3)) + 1) > 1.
bool log_term_negativity(const Integer& delta);

std::string tail_report_json(const TailReport& r);

}  // namespace vlab::asymptotic
