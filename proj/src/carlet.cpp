#include "vlab/carlet.hpp"

#include <json.hpp>

namespace vlab::carlet {

namespace {

Integer pow2z(unsigned long e) {
  Integer r(1);
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
  return r;
}

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool is_prime(unsigned long n) {
  Integer z(n);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

constexpr unsigned kMaxPrecision = 4096;

}  // namespace

QuadraticCoeffs quadratic_coeffs(unsigned k, const Rational& g, unsigned precision) {
  if (k < 4) throw std::invalid_argument("quadratic_coeffs: k >= 4");
  if (sgn(g) <= 0) throw std::invalid_argument("quadratic_coeffs: g > 0");
  Integer half = pow2z(k - 1);
  QuadraticCoeffs qc;
  qc.a = (half - 1) * (half - 2);
  RationalBounds p = pow2_cuberoot_bounds(13ul * (k - 1), precision);
  Rational two2k(pow2z(2ul * k));
  qc.b = {g * p.lo + two2k, g * p.hi + two2k};
  return qc;
}

Sign certify_sign(unsigned k, unsigned long n, const Rational& g, unsigned precision) {
  QuadraticCoeffs qc = quadratic_coeffs(k, g, precision);
  Rational q(pow2z(n));
  if (n % 2 == 0) {
    Rational as(qc.a * pow2z(n / 2));
    if (q - as - qc.b.hi > 0) return Sign::Positive;
    if (q - as - qc.b.lo < 0) return Sign::Negative;
    return Sign::Undecided;
  }
  // odd n: compare t = 2^n - B against A * 2^(n/2) by squaring
  Rational a2q = Rational(qc.a * qc.a) * q;
  Rational t = q - qc.b.hi;
  if (t > 0 && t * t > a2q) return Sign::Positive;
  Rational u = q - qc.b.lo;
  if (u <= 0 || u * u < a2q) return Sign::Negative;
  return Sign::Undecided;
}

namespace {

Sign certify_sign_escalating(unsigned k, unsigned long n, const Rational& g) {
  for (unsigned prec = 128; prec <= kMaxPrecision; prec *= 2) {
    Sign s = certify_sign(k, n, g, prec);
    if (s != Sign::Undecided) return s;
  }
  return Sign::Undecided;
}

}  // namespace

MinimalN minimal_n(unsigned k, const Rational& g) {
  if (k < 4) throw std::invalid_argument("minimal_n: k >= 4");
  unsigned long n = 1;
  for (;; ++n) {
    Sign s = certify_sign_escalating(k, n, g);
    if (s == Sign::Undecided)
      throw std::runtime_error("minimal_n: undecided sign at n=" + std::to_string(n));
    if (s == Sign::Positive) break;
  }
  if (n > 1 && certify_sign_escalating(k, n - 1, g) != Sign::Negative)
    throw std::logic_error("minimal_n: bound not negative at n_min-1");
  // Sign flips only once past n_min: y |-> y^2 - A y - B increases for
  // y > A/2, so it suffices that 2^((n-1)/2) > A/2, i.e. 2^(n-1) > A^2/4.
  QuadraticCoeffs qc = quadratic_coeffs(k, g, 128);
  Rational a2_over_4(qc.a * qc.a, 4);
  a2_over_4.canonicalize();
  if (n > 1 && !(Rational(pow2z(n - 1)) > a2_over_4))
    throw std::logic_error("minimal_n: monotonicity side condition failed");
  MinimalN m{n, n};
  while (m.n_min_odd_prime < 3 || m.n_min_odd_prime % 2 == 0 ||
         !is_prime(m.n_min_odd_prime)) {
    ++m.n_min_odd_prime;
  }
  return m;
}

std::vector<CarletRow> carlet_table(unsigned k_min, unsigned k_max, GPolicy policy) {
  if (k_min < 3 || k_min > k_max) throw std::invalid_argument("carlet_table: bad range");
  std::vector<CarletRow> rows;
  for (unsigned k = k_min; k <= k_max; ++k) {
    CarletRow row;
    row.k = k;
    if (k == 3) {
      // Cited result: f_inv is not 3rd order sum-free for n >= 6.
      row.g_used = 0;
      row.a_coeff = 0;
      row.b_bounds = {Rational(0), Rational(0)};
      row.n_min = 6;
      row.n_min_odd_prime = 7;
      row.j_value = Rational(13) - Rational(6);
      row.external = true;
    } else {
      Rational g;
      if (policy == GPolicy::Paper) {
        g = k <= 7 ? frac(2924, 1000) : Rational(2741, 1000);
      } else {
        // delta = 2^(k-1) >= 8 for every k >= 4, so 2.741 is always certified.
        g = Rational(2741, 1000);
      }
      row.g_used = g;
      QuadraticCoeffs qc = quadratic_coeffs(k, g, 128);
      row.a_coeff = qc.a;
      row.b_bounds = qc.b;
      MinimalN m = minimal_n(k, g);
      row.n_min = m.n_min;
      row.n_min_odd_prime = m.n_min_odd_prime;
      Rational thirteen_k_thirds(13ul * k, 3);
      thirteen_k_thirds.canonicalize();
      row.j_value = thirteen_k_thirds - Rational(static_cast<unsigned long>(m.n_min));
      row.external = false;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

// Bracket constant 1/(65536 sqrt(2)) + sqrt(2^-33 + 11.44 + tail), where
// tail encloses 2^((19-7k)/3).
Interval bracket_constant(const Interval& tail, mpfr_prec_t prec) {
  Interval inv_sqrt2 =
      (Interval::point(65536L, prec) * Interval::point(2L, prec).sqrt()).recip();
  Interval rad = Interval::point(Rational(1, pow2z(33)), prec) +
                 Interval::point(frac(1144, 100), prec) + tail;
  return inv_sqrt2 + rad.sqrt();
}

}  // namespace

Interval y0_upper(unsigned k, mpfr_prec_t prec) {
  if (k < 100) throw std::invalid_argument("y0_upper: k >= 100");
  // 2^((19-7k)/3), negative exponent
  long e = 19L - 7L * static_cast<long>(k);
  Interval tail = (Interval::point(Rational(-e), prec) / Interval::point(3L, prec))
                      .exp2()
                      .recip();
  Interval c = bracket_constant(tail, prec);
  // exponent 13(k-1)/6 - 1 = (13(k-1) - 6)/6
  Interval expo = Interval::point(frac(13L * (static_cast<long>(k) - 1) - 6, 6), prec);
  return c * expo.exp2();
}

Rational y0_exact_root_upper(unsigned k, unsigned precision) {
  if (k < 100) throw std::invalid_argument("y0_exact_root_upper: k >= 100");
  QuadraticCoeffs qc = quadratic_coeffs(k, frac(286, 100), precision);
  Rational disc = Rational(qc.a * qc.a) + 4 * qc.b.hi;
  Rational root_hi = sqrt_bounds(disc, precision).hi;
  return (Rational(qc.a) + root_hi) / 2;
}

Interval asymptotic_constant(mpfr_prec_t prec) {
  Interval tail = Interval::point(Rational(1, pow2z(227)), prec);
  Interval c = bracket_constant(tail, prec);
  return Interval::point(2L, prec) * c.log2() -
         Interval::point(Rational(19, 3), prec);
}

unsigned long theorem1_max_k(unsigned long n) {
  Rational a(3ul * n, 13);
  a.canonicalize();
  Rational b(461, 1000);
  b.canonicalize();
  Rational v = a + b;
  Integer f = floor_q(v);
  if (f < 3) return 0;
  return f.get_ui();
}

std::string carlet_table_csv(const std::vector<CarletRow>& rows) {
  std::string out = "k,g_used,n_min,n_min_odd_prime,j_value\n";
  for (const auto& r : rows) {
    out += std::to_string(r.k) + "," + r.g_used.get_str() + "," +
           std::to_string(r.n_min) + "," + std::to_string(r.n_min_odd_prime) + "," +
           r.j_value.get_str() + "\n";
  }
  return out;
}

std::string carlet_table_json(const std::vector<CarletRow>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["k"] = r.k;
    row["g_used"] = r.g_used.get_str();
    row["a_coeff"] = r.a_coeff.get_str();
    row["b_lower"] = r.b_bounds.lo.get_str();
    row["b_upper"] = r.b_bounds.hi.get_str();
    row["n_min"] = r.n_min;
    row["n_min_odd_prime"] = r.n_min_odd_prime;
    row["j_value"] = r.j_value.get_str();
    row["external"] = r.external;
    j.push_back(std::move(row));
  }
  return j.dump(2);
}

}  // namespace vlab::carlet
