#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vlab/exact.hpp"
#include "vlab/interval.hpp"

namespace vlab::planes {

// P(delta) = (3/2)delta^4 - 2 delta^3 + (5/2)delta^2, the coefficient of r.
Rational p_term(unsigned long delta);

struct CSums {
  unsigned long delta;
  long r;
  Rational c1, c2, c3, c4;
};

// Exact sums from j = r+1 to delta-1. Requires 1 <= r <= delta-2.
CSums compute_csums(unsigned long delta, long r);

// F(delta, r) = r*P + delta^5 c1 + 3 delta^4 c2 + delta^3 c3 - (3/4) delta^2 c4
//             + 2 delta^2, exact.
Rational f_value(unsigned long delta, long r);

// Exact sign of F(delta, r+1) - F(delta, r), via a single integer expression.
int first_difference_sign(unsigned long delta, long r);

// Smallest minimizer of F over r in {1, ..., delta-2} (sign-change search on
// the first difference; ties broken toward smaller r). Requires delta >= 3.
long optimal_r(unsigned long delta);

// Exhaustive search over the full candidate set; cross-check oracle.
long optimal_r_exhaustive(unsigned long delta);

// Brute-force scan of every first difference: true iff the sign pattern is
// monotone (no return to negative) and the binary search lands on the first
// nonnegative position.
bool r_search_brute_force_valid(unsigned long delta);

// F(delta, optimal_r). For delta = 2 the sum is empty and F = P(2) = 18.
Rational f_min_exact(unsigned long delta);

// Interval prefix sums of the four summand families, for O(1) per-(delta, r)
// evaluation of F across a sweep. Index m holds sum over j in [2, m].
class PrefixSums {
 public:
  PrefixSums(unsigned long max_m, mpfr_prec_t prec = Interval::kDefaultPrec);

  Interval f_interval(unsigned long delta, long r) const;
  Interval csum(int which, unsigned long delta, long r) const;  // which in 1..4

  unsigned long max_m() const { return max_m_; }

 private:
  unsigned long max_m_;
  mpfr_prec_t prec_;
  std::vector<Interval> s1_, s2_, s3_, s4_;
};

struct BoundRow {
  unsigned long delta;
  long r_opt;
  Rational f_value;
  Rational threshold_constant;
  bool pass;
  std::string computed_bound;  // truncated to 3 decimals
  std::string threshold;       // truncated to 3 decimals, exact values trimmed
  std::string ratio_upper;     // certified upper bound on F / delta^(13/3)
};

struct SweepReport {
  unsigned long delta_min = 0, delta_max = 0;
  Rational constant;
  std::vector<unsigned long> failures;  // sorted ascending, no duplicates
  double elapsed_seconds = 0.0;
  unsigned long resumed_from = 0;  // 0 when started fresh
};

struct SweepOptions {
  unsigned threads = 1;
  std::string checkpoint_path;          // empty: no checkpointing
  unsigned long checkpoint_stride = 10000;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Certified sweep: failures = all delta in [delta_min, delta_max] with
// f_min(delta) > constant * delta^(13/3). Deterministic for any thread count.
SweepReport verify_range(unsigned long delta_min, unsigned long delta_max,
                         const Rational& constant, const SweepOptions& opt = {});

// Appendix rows for delta in [6, 37] against the 1.99 threshold.
std::vector<BoundRow> appendix_table();

// One row against an arbitrary constant (exact F; small delta only).
BoundRow bound_row(unsigned long delta, const Rational& constant);

// Truncated decimal rendering of c * delta^(13/3); exact values have their
// trailing zeros trimmed (the tables print e.g. 16302.08, not 16302.080).
std::string threshold_string(const Rational& c, unsigned long delta, unsigned places);

struct MaxRatioReport {
  unsigned long delta_argmax = 0;
  Rational ratio_lower;  // certified bounds on f_min(argmax)/argmax^(13/3)
  Rational ratio_upper;
  std::string ratio_upper_str;
};

// Certified maximum of f_min(delta)/delta^(13/3) over [delta_min, delta_max].
MaxRatioReport max_ratio(unsigned long delta_min, unsigned long delta_max);

// Enclosure of the Cafure-Matera coefficient 2 delta^(13/3) + 3 delta^(11/3).
RationalBounds baseline_constant(unsigned long delta);

std::string sweep_report_csv(const SweepReport& r);
std::string bound_rows_csv(const std::vector<BoundRow>& rows);

}  // namespace vlab::planes
