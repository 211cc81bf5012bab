#include "vlab/asymptotic.hpp"

#include <json.hpp>

namespace vlab::asymptotic {

namespace {

Interval qpoint(const Rational& v, mpfr_prec_t prec) { return Interval::point(v, prec); }

Rational frac(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational beta_exact(const Integer& delta) { return frac(delta, delta - 1); }

}  // namespace

Interval lambda_optimum(mpfr_prec_t prec) {
  return Interval::point(Rational(2, 3), prec).cbrt();
}

Interval lambda_objective(const Interval& lam) {
  mpfr_prec_t p = lam.precision();
  return Interval::point(1L, p) / (Interval::point(2L, p) * lam * lam) +
         qpoint(Rational(3, 2), p) * lam;
}

AsymptoticParams make_params(const Integer& delta, mpfr_prec_t prec) {
  if (delta < 2) throw std::invalid_argument("make_params: delta >= 2");
  AsymptoticParams p{lambda_optimum(prec), Interval(prec), Interval(prec), Interval(prec)};
  p.r = p.lambda * Interval::point(delta, prec).cbrt();
  p.beta = qpoint(beta_exact(delta), prec);
  p.gamma = p.r / (p.r - Interval::point(1L, prec));
  return p;
}

IntegralBounds integral_upper_bounds(unsigned long delta, long r_floor, mpfr_prec_t prec) {
  if (r_floor < 1 || static_cast<unsigned long>(r_floor) > delta - 2)
    throw std::invalid_argument("integral_upper_bounds: r_floor outside [1, delta-2]");
  Integer d(delta), rf(r_floor);
  Integer d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d;
  Rational beta = beta_exact(d);
  Rational b3q = beta * beta * beta;
  IntegralBounds out{Interval(prec), Interval(prec), Interval(prec), Interval(prec)};
  out.b1 = qpoint(frac(-d3, 2) + b3q * frac(d2, 24) + frac(d5, 2 * rf * rf) -
                      frac(d5, 24 * rf * rf * rf),
                  prec);
  out.b2 = qpoint(Rational(-3 * d3) + b3q * frac(3 * d2, 8) + frac(3 * d4, rf) +
                      frac(3 * d4, 8 * rf * rf),
                  prec);
  Interval log_ratio = qpoint(frac(d - 1, rf), prec).log();
  out.b3 = Interval::point(Integer(2 * d3), prec) * log_ratio +
           qpoint(beta * frac(11 * d2, 8), prec) -
           qpoint(frac(11 * d3, 8 * rf), prec);
  out.b4 = -(qpoint(frac(3 * d2, 4), prec) *
             qpoint(frac(d, rf + 1), prec).log());
  return out;
}

Interval leading_coefficient(const Interval& gamma, const Interval& lambda) {
  mpfr_prec_t p = gamma.precision();
  return gamma * gamma / (Interval::point(2L, p) * lambda * lambda) +
         qpoint(Rational(3, 2), p) * lambda;
}

namespace {

// Normalized bound F/delta^(13/3) over an interval of delta values.
// delta_iv must not contain values < 2. neg_powers[a] supplies the enclosure
// of delta^(-a/3) for a in {1,2,3,4,5,6,10}; log_term is the enclosure of
// 2*(log(gamma*(delta-1)/(lambda*delta^(1/3))) - 7/4)*delta^(-4/3).
Interval ratio_from_parts(const Interval& gamma, const Interval& beta,
                          const Interval& lambda, const Interval& p13,
                          const Interval& p23, const Interval& p33,
                          const Interval& p53, const Interval& p63,
                          const Interval& p103, const Interval& log_term) {
  mpfr_prec_t p = gamma.precision();
  Interval acc = leading_coefficient(gamma, lambda);
  acc -= gamma * gamma * gamma /
         (Interval::point(24L, p) * lambda * lambda * lambda) * p13;
  acc += Interval::point(3L, p) * gamma / lambda * p23;
  acc += (qpoint(Rational(5, 2), p) -
          qpoint(Rational(3, 8), p) * gamma * gamma / (lambda * lambda) -
          Interval::point(2L, p) * lambda) *
         p33;
  acc += log_term;
  acc -= qpoint(Rational(11, 8), p) * gamma / lambda * p53;
  acc += qpoint(Rational(5, 2), p) * lambda * p63;
  acc += (beta * beta * beta / Interval::point(24L, p) +
          qpoint(Rational(3, 8), p) * beta * beta +
          qpoint(Rational(11, 8), p) * beta + Interval::point(2L, p)) *
         p103;
  return acc;
}

// Ratio over a bounded delta interval [dlo, dhi], with gamma/beta hulls taken
// from the endpoints (both are decreasing in delta).
Interval segment_ratio(const Integer& dlo, const Integer& dhi, mpfr_prec_t prec) {
  AsymptoticParams plo = make_params(dlo, prec);
  AsymptoticParams phi = make_params(dhi, prec);
  Interval gamma = Interval::hull(phi.gamma, plo.gamma);
  Interval beta = Interval::hull(phi.beta, plo.beta);
  Interval lambda = plo.lambda;
  Interval d = Interval::hull(Interval::point(dlo, prec), Interval::point(dhi, prec));
  Interval d13 = d.cbrt();
  Interval inv13 = d13.recip();
  Interval p13 = inv13;
  Interval p23 = inv13 * inv13;
  Interval p33 = d.recip();
  Interval p43 = p33 * p13;
  Interval p53 = p33 * p23;
  Interval p63 = p33 * p33;
  Interval p103 = p63 * p43;  // delta^(-10/3)
  Interval log_term =
      Interval::point(2L, prec) *
      ((gamma * (d - Interval::point(1L, prec)) / (lambda * d13)).log() -
       qpoint(Rational(7, 4), prec)) *
      p43;
  return ratio_from_parts(gamma, beta, lambda, p13, p23, p33, p53, p63, p103, log_term);
}

// Sound upper enclosure of the ratio over the open tail delta >= g.
// Requires log(gamma_hi/lambda * g^(2/3)) > 1/2 (checked) so the log-term
// majorant is decreasing.
Interval tail_ratio(const Integer& g, mpfr_prec_t prec) {
  AsymptoticParams pg = make_params(g, prec);
  Interval gamma = Interval::hull(Interval::point(1L, prec), pg.gamma);
  Interval beta = Interval::hull(Interval::point(1L, prec), pg.beta);
  Interval lambda = pg.lambda;
  Interval zero = Interval::point(0L, prec);
  Interval gi = Interval::point(g, prec);
  Interval g13 = gi.cbrt();
  auto upto = [&](const Interval& v) { return Interval::hull(zero, v); };
  Interval p13 = upto(g13.recip());
  Interval p23 = upto((g13 * g13).recip());
  Interval p33 = upto(gi.recip());
  Interval p43 = upto((gi * g13).recip());
  Interval p53 = upto((gi * g13 * g13).recip());
  Interval p63 = upto((gi * gi).recip());
  Interval p103 = upto((gi * gi * gi * g13).recip());
  // log(gamma (delta-1) / (lambda delta^(1/3))) <= log(gamma/lambda) + (2/3) log delta,
  // and (log K + (2/3) log x) x^(-4/3) is decreasing once log(K x^(2/3)) > 1/2.
  Interval K = gamma / lambda;
  Interval check = (K * g13 * g13).log();
  if (!Interval::point(Rational(1, 2), prec).definitely_lt(check))
    throw std::domain_error("tail_ratio: log-term majorant not certified decreasing");
  Interval log_major =
      Interval::point(2L, prec) *
      (K.log() + qpoint(Rational(2, 3), prec) * gi.log() - qpoint(Rational(7, 4), prec)) *
      (gi * g13).recip();
  Interval log_term = Interval::hull(zero, log_major);
  return ratio_from_parts(gamma, beta, lambda, p13, p23, p33, p53, p63, p103, log_term);
}

Interval point_ratio(const Integer& delta, mpfr_prec_t prec) {
  return segment_ratio(delta, delta, prec);
}

}  // namespace

Interval gold_rhs(const Integer& delta, mpfr_prec_t prec) {
  if (delta < Integer(kRegimeStart))
    throw std::invalid_argument("gold_rhs: delta below the large-delta regime");
  Interval d = Interval::point(delta, prec);
  Interval p133 = d.pow_int(4) * d.cbrt();  // delta^(13/3) = delta^4 * delta^(1/3)
  return point_ratio(delta, prec) * p133;
}

TailReport verify_tail(const Rational& constant, const Integer& delta_start,
                       mpfr_prec_t prec) {
  if (delta_start < Integer(kRegimeStart))
    throw std::invalid_argument("verify_tail: delta_start below the large-delta regime");
  TailReport rep;
  rep.delta_start = delta_start;
  rep.constant = constant;
  Integer g = delta_start;
  for (int i = 0; i <= 64; ++i) {
    Interval at_point = point_ratio(g, prec);
    rep.grid.push_back({g, decimal_upper(at_point.upper(), 6)});
    if (i == 64) break;
    Integer g_next = g * 2;
    Interval seg = segment_ratio(g, g_next, prec);
    if (seg.upper() > constant) {
      if (at_point.lower() > constant) {
        rep.verdict = TailVerdict::Failed;
        rep.failed_at = g;
      } else {
        rep.verdict = TailVerdict::Inconclusive;
        rep.failed_at = g;
      }
      return rep;
    }
    g = g_next;
  }
  Interval tail;
  try {
    tail = tail_ratio(g, prec);
  } catch (const std::domain_error&) {
    rep.verdict = TailVerdict::Inconclusive;
    rep.failed_at = g;
    return rep;
  }
  if (tail.upper() > constant) {
    rep.verdict = tail.lower() > constant ? TailVerdict::Failed : TailVerdict::Inconclusive;
    rep.failed_at = g;
    return rep;
  }
  rep.verdict = TailVerdict::Certified;
  return rep;
}

Interval projected_constant(const Integer& sweep_limit, mpfr_prec_t prec) {
  if (sweep_limit < Integer(kRegimeStart))
    throw std::invalid_argument("projected_constant: M >= 3e5");
  AsymptoticParams p = make_params(sweep_limit, prec);
  return leading_coefficient(p.gamma, p.lambda);
}

bool log_term_negativity(const Integer& delta) {
  if (delta < Integer(kRegimeStart))
    throw std::invalid_argument("log_term_negativity: delta >= 3e5");
  for (mpfr_prec_t prec = Interval::kDefaultPrec; prec <= 1024; prec *= 2) {
    AsymptoticParams p = make_params(delta, prec);
    Integer flo = floor_q(p.r.lower());
    Integer fhi = floor_q(p.r.upper());
    if (flo == fhi) return delta > flo + 1;
  }
  throw std::runtime_error("log_term_negativity: floor(r) undecided at max precision");
}

std::string tail_report_json(const TailReport& r) {
  nlohmann::json j;
  j["delta_start"] = r.delta_start.get_str();
  j["constant"] = r.constant.get_str();
  j["grid"] = nlohmann::json::array();
  for (const auto& gp : r.grid)
    j["grid"].push_back({{"delta", gp.delta.get_str()}, {"ratio_hi", gp.ratio_hi}});
  switch (r.verdict) {
    case TailVerdict::Certified: j["verdict"] = "Certified"; break;
    case TailVerdict::Failed: j["verdict"] = "Failed"; break;
    case TailVerdict::Inconclusive: j["verdict"] = "Inconclusive"; break;
  }
  if (sgn(r.failed_at) != 0) j["failed_at"] = r.failed_at.get_str();
  return j.dump(2);
}

}  // namespace vlab::asymptotic
