#pragma once

#include <optional>
#include <string>

#include "vlab/exact.hpp"

namespace vlab::hypersurface {

// Upper bound on (2 delta^2 + delta + 1 + 4/3 + (4/3) b delta^(13/3)) / delta^(13/3),
// the q^(n-2) coefficient left after extracting (delta-1)(delta-2) q^(1/2).
Rational residual_ratio(const Rational& b, unsigned long delta,
                        unsigned precision = 96);

struct GDerivation {
  Rational b;               // planes-bound constant the derivation starts from
  unsigned long delta_min;
  std::optional<std::pair<unsigned long, unsigned long>> excluded;  // delta interval
  Rational g_minimal;       // derived upper bound at delta_min
  Rational g_paper;         // the claimed constant
  bool pass;                // g_minimal <= g_paper
};

// Derives the point-count constant for degrees >= delta_min from the
// planes-bound constant b, and compares with the claimed value g_paper.
GDerivation derive_g(const Rational& b, unsigned long delta_min,
                     const Rational& g_paper,
                     std::optional<std::pair<unsigned long, unsigned long>> excluded =
                         std::nullopt);

// Enclosure of the full degree-2 coefficient (109/3) / 2^(13/3).
RationalBounds delta2_constant(unsigned precision = 96);

enum class EstimateMode { Thm31, Lemma32G2924, Lemma32G2741, Delta2 };

struct EstimateBound {
  unsigned long delta = 0;
  unsigned long n = 0;
  Integer q;
  EstimateMode mode = EstimateMode::Thm31;
  Integer main_term;        // q^(n-1)
  Rational error_upper;     // certified upper bound on the error term
};

// error <= (delta-1)(delta-2) q^(n-3/2) + G delta^(13/3) q^(n-2), with the
// mode's G. Rejects delta/mode mismatches and q^(n-1) < 4.
EstimateBound estimate_bound(unsigned long delta, unsigned long n, const Integer& q,
                             EstimateMode mode, unsigned precision = 96);

const char* mode_name(EstimateMode m);
std::string estimate_bound_json(const EstimateBound& e);

}  // namespace vlab::hypersurface
