#pragma once

#include <string>
#include <vector>

#include "vlab/exact.hpp"
#include "vlab/interval.hpp"

namespace vlab::carlet {

enum class Sign { Positive, Negative, Undecided };

// Coefficients of the variety lower bound 2^n - A*2^(n/2) - B for a given k
// and point-count constant g: A = (2^(k-1)-1)(2^(k-1)-2),
// B = g*2^(13(k-1)/3) + 2^(2k) (enclosed).
struct QuadraticCoeffs {
  Integer a;
  RationalBounds b;
};

QuadraticCoeffs quadratic_coeffs(unsigned k, const Rational& g, unsigned precision);

// Certified sign of 2^n - A*2^(n/2) - B. Odd n is handled by squaring; all
// arithmetic is exact rational. Undecided is only returned when the enclosure
// of B is too loose at this precision, never a wrong sign.
Sign certify_sign(unsigned k, unsigned long n, const Rational& g,
                  unsigned precision = 128);

struct MinimalN {
  unsigned long n_min;
  unsigned long n_min_odd_prime;  // least odd prime >= n_min
};

// Least n with a certified positive bound; also certifies Negative at n_min-1
// and the monotonicity side condition 2^((n_min-1)/2) > A/2.
MinimalN minimal_n(unsigned k, const Rational& g);

struct CarletRow {
  unsigned k;
  Rational g_used;           // 0 for the externally sourced k=3 row
  Integer a_coeff;
  RationalBounds b_bounds;
  unsigned long n_min;
  unsigned long n_min_odd_prime;
  Rational j_value;          // 13k/3 - n_min
  bool external;             // k=3 row cited, not derived here
};

enum class GPolicy { Paper, Best };

// Rows for k in [k_min, k_max]. Paper policy: G = 2.924 for 4<=k<=7 and 2.741
// for k>=8. Best policy: the smallest constant certified for delta = 2^(k-1).
std::vector<CarletRow> carlet_table(unsigned k_min, unsigned k_max, GPolicy policy);

// Enclosure of the k >= 100 upper bound on the larger quadratic root,
// (1/(65536*sqrt(2)) + sqrt(2^-33 + 11.44 + 2^((19-7k)/3))) * 2^(13(k-1)/6 - 1).
Interval y0_upper(unsigned k, mpfr_prec_t prec = Interval::kDefaultPrec);

// Rational upper bound on the exact larger root of y^2 - A y - B (g = 2.86).
Rational y0_exact_root_upper(unsigned k, unsigned precision = 128);

// Enclosure of 2*log2(1/(65536*sqrt(2)) + sqrt(2^-33 + 11.44 + 2^-227)) - 19/3.
Interval asymptotic_constant(mpfr_prec_t prec = Interval::kDefaultPrec);

// floor(3n/13 + 461/1000), clamped to 0 when below 3.
unsigned long theorem1_max_k(unsigned long n);

std::string carlet_table_csv(const std::vector<CarletRow>& rows);
std::string carlet_table_json(const std::vector<CarletRow>& rows);

}  // namespace vlab::carlet
