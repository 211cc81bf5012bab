#include "vlab/hypersurface.hpp"

#include <json.hpp>

namespace vlab::hypersurface {

namespace {

Integer zpow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

Rational residual_ratio(const Rational& b, unsigned long delta, unsigned precision) {
  if (delta < 3) throw std::invalid_argument("residual_ratio: delta >= 3");
  Integer d(delta);
  Rational poly = Rational(2 * d * d + d + 1) + frac(4, 3);
  RationalBounds p133 = pow_13_3_bounds(delta, precision);
  return frac(4, 3) * b + poly / p133.lo;
}

GDerivation derive_g(const Rational& b, unsigned long delta_min,
                     const Rational& g_paper,
                     std::optional<std::pair<unsigned long, unsigned long>> excluded) {
  GDerivation g;
  g.b = b;
  g.delta_min = delta_min;
  g.excluded = excluded;
  g.g_paper = g_paper;
  g.g_minimal = residual_ratio(b, delta_min);
  // The ratio decreases in delta; spot-check on a sample grid so delta_min
  // really is the worst case over its range.
  Rational prev = g.g_minimal;
  for (unsigned long d = delta_min + 1; d <= delta_min + 100; ++d) {
    Rational cur = residual_ratio(b, d);
    if (cur > prev)
      throw std::logic_error("derive_g: residual ratio not decreasing at delta=" +
                             std::to_string(d));
    prev = cur;
  }
  g.pass = g.g_minimal <= g_paper;
  return g;
}

RationalBounds delta2_constant(unsigned precision) {
  // (4/3)*18 + (2 + 1 + 4 + 4 + 4/3) = 109/3, divided by 2^(13/3)
  Rational num(109, 3);
  RationalBounds p = pow2_cuberoot_bounds(13, precision);
  return {num / p.hi, num / p.lo};
}

EstimateBound estimate_bound(unsigned long delta, unsigned long n, const Integer& q,
                             EstimateMode mode, unsigned precision) {
  if (delta < 2) throw std::invalid_argument("estimate_bound: delta >= 2 required");
  if (n < 2) throw std::invalid_argument("estimate_bound: n >= 2 required");
  if (q < 2) throw std::invalid_argument("estimate_bound: q >= 2 required");
  switch (mode) {
    case EstimateMode::Thm31:
      if (delta >= 6 && delta <= 37)
        throw std::invalid_argument("estimate_bound: thm31 excludes delta in [6,37]");
      break;
    case EstimateMode::Lemma32G2924:
      break;
    case EstimateMode::Lemma32G2741:
      if (delta < 8) throw std::invalid_argument("estimate_bound: g2741 needs delta >= 8");
      break;
    case EstimateMode::Delta2:
      if (delta != 2) throw std::invalid_argument("estimate_bound: delta2 needs delta = 2");
      break;
  }
  Integer qn1 = zpow(q, n - 1);
  if (qn1 < 4)
    throw std::invalid_argument("estimate_bound: q^(n-1) >= 4 required by the 4/3 step");

  EstimateBound e;
  e.delta = delta;
  e.n = n;
  e.q = q;
  e.mode = mode;
  e.main_term = qn1;

  Integer qn2 = zpow(q, n - 2);
  Rational sqrt_q_hi = sqrt_bounds(Rational(q), precision).hi;
  Rational p133_hi = pow_13_3_bounds(delta, precision).hi;
  Rational g;
  switch (mode) {
    case EstimateMode::Thm31: g = frac(286, 100); break;
    case EstimateMode::Lemma32G2924: g = frac(2924, 1000); break;
    case EstimateMode::Lemma32G2741: g = frac(2741, 1000); break;
    case EstimateMode::Delta2: g = frac(1803, 1000); break;
  }
  Integer d(delta);
  e.error_upper = Rational((d - 1) * (d - 2) * qn2) * sqrt_q_hi +
                  g * p133_hi * Rational(qn2);
  return e;
}

const char* mode_name(EstimateMode m) {
  switch (m) {
    case EstimateMode::Thm31: return "thm31";
    case EstimateMode::Lemma32G2924: return "lemma32_g2924";
    case EstimateMode::Lemma32G2741: return "lemma32_g2741";
    case EstimateMode::Delta2: return "delta2";
  }
  return "?";
}

std::string estimate_bound_json(const EstimateBound& e) {
  nlohmann::json j;
  j["delta"] = e.delta;
  j["n"] = e.n;
  j["q"] = e.q.get_str();
  j["mode"] = mode_name(e.mode);
  j["main"] = e.main_term.get_str();
  j["error_bound"] = decimal_upper(e.error_upper, 3);
  return j.dump(2);
}

}  // namespace vlab::hypersurface
