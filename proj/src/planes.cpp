#include "vlab/planes.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

namespace vlab::planes {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

Rational frac(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Summands of the four sums in c1..c4, as exact rationals.
Rational t1(unsigned long j) { return frac(8 * Integer(j) - 1, 8 * Integer(j) * j * j * j); }
Rational t2(unsigned long j) { return frac(4 * Integer(j) - 1, 4 * Integer(j) * j * j); }
Rational t3(unsigned long j) { return frac(16 * Integer(j) - 11, 8 * Integer(j) * j); }
Rational t4(unsigned long j) { return frac(1, Integer(j)); }

Integer zpow(unsigned long base, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

}  // namespace

Rational p_term(unsigned long delta) {
  require(delta >= 2, "p_term: delta >= 2");
  Integer d(delta);
  // (3 d^4 - 4 d^3 + 5 d^2) / 2
  return frac(3 * d * d * d * d - 4 * d * d * d + 5 * d * d, 2);
}

CSums compute_csums(unsigned long delta, long r) {
  require(delta >= 3, "compute_csums: delta >= 3");
  require(r >= 1 && static_cast<unsigned long>(r) <= delta - 2,
          "compute_csums: r outside [1, delta-2]");
  CSums s{delta, r, Rational(0), Rational(0), Rational(0), Rational(0)};
  for (unsigned long j = static_cast<unsigned long>(r) + 1; j <= delta - 1; ++j) {
    s.c1 += t1(j);
    s.c2 += t2(j);
    s.c3 += t3(j);
    s.c4 += t4(j);
  }
  return s;
}

Rational f_value(unsigned long delta, long r) {
  CSums s = compute_csums(delta, r);
  Integer d(delta);
  Integer d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d;
  return Rational(r) * p_term(delta) + Rational(d5) * s.c1 +
         Rational(3 * d4) * s.c2 + Rational(d3) * s.c3 -
         Rational(3, 4) * Rational(d2) * s.c4 + Rational(2 * d2);
}

int first_difference_sign(unsigned long delta, long r) {
  // F(r+1) - F(r) = P - (delta^5 t1(j) + 3 delta^4 t2(j) + delta^3 t3(j)
  //                      - (3/4) delta^2 t4(j)), j = r+1.
  // Multiplying by 16 j^4 > 0 gives an integer whose sign is the answer.
  require(delta >= 3, "first_difference_sign: delta >= 3");
  Integer d(delta), j(r + 1);
  Integer d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d;
  Integer j2 = j * j, j3 = j2 * j, j4 = j3 * j;
  Integer p16 = 24 * d4 - 32 * d3 + 40 * d2;  // 16 * P
  Integer v = j4 * p16 - 2 * d5 * (8 * j - 1) - 12 * d4 * j * (4 * j - 1) -
              2 * d3 * j2 * (16 * j - 11) + 12 * d2 * j3;
  return sgn(v);
}

long optimal_r(unsigned long delta) {
  require(delta >= 3, "optimal_r: delta >= 3");
  long last = static_cast<long>(delta) - 2;
  // First differences are nondecreasing in r (checked by brute force in the
  // test corpus), so the smallest r with F(r+1) >= F(r) is the minimizer.
  long lo = 1, hi = last;  // invariant: answer in [lo, hi]
  while (lo < hi) {
    long mid = lo + (hi - lo) / 2;
    if (first_difference_sign(delta, mid) >= 0)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

long optimal_r_exhaustive(unsigned long delta) {
  require(delta >= 3, "optimal_r_exhaustive: delta >= 3");
  // Incremental scan: raising r by one adds P and drops the j = r+1 summand
  // from each c-sum, so each step costs O(1) exact operations.
  const Rational d(delta);
  const Rational d2 = d * d;
  const Rational d3 = d2 * d;
  const Rational d4 = d2 * d2;
  const Rational d5 = d4 * d;
  const Rational p = p_term(delta);
  long best = 1;
  Rational best_f = f_value(delta, 1);
  Rational f = best_f;
  for (long r = 2; static_cast<unsigned long>(r) <= delta - 2; ++r) {
    const long j = r;  // the summand index leaving the c-sums
    const Rational j1(j);
    const Rational j2(j * j);
    const Rational j3 = j1 * j2;
    const Rational j4 = j2 * j2;
    f += p;
    f -= d5 * (1 / j3 - frac(1, 8) / j4);
    f -= 3 * d4 * (1 / j2 - frac(1, 4) / j3);
    f -= d3 * (2 / j1 - frac(11, 8) / j2);
    f += frac(3, 4) * d2 / j1;
    if (f < best_f) {
      best_f = f;
      best = r;
    }
  }
  return best;
}

bool r_search_brute_force_valid(unsigned long delta) {
  require(delta >= 3, "r_search_brute_force_valid: delta >= 3");
  const long last = static_cast<long>(delta) - 2;
  // Scan every first difference: once it turns nonnegative it must stay
  // nonnegative, and the search must land on the first such position.
  long first_nonneg = last;
  bool seen_nonneg = false;
  for (long r = 1; r < last; ++r) {
    const int s = first_difference_sign(delta, r);
    if (s >= 0 && !seen_nonneg) {
      seen_nonneg = true;
      first_nonneg = r;
    }
    if (s < 0 && seen_nonneg) return false;  // sign pattern not monotone
  }
  return optimal_r(delta) == first_nonneg;
}

Rational f_min_exact(unsigned long delta) {
  require(delta >= 2, "f_min_exact: delta >= 2");
  if (delta == 2) return p_term(2);  // empty sum: F reduces to P(2) = 18
  return f_value(delta, optimal_r(delta));
}

PrefixSums::PrefixSums(unsigned long max_m, mpfr_prec_t prec)
    : max_m_(max_m), prec_(prec) {
  s1_.reserve(max_m + 1);
  s2_.reserve(max_m + 1);
  s3_.reserve(max_m + 1);
  s4_.reserve(max_m + 1);
  Interval a1(prec), a2(prec), a3(prec), a4(prec);
  // index 0 and 1 hold the empty sum
  s1_.push_back(a1); s2_.push_back(a2); s3_.push_back(a3); s4_.push_back(a4);
  s1_.push_back(a1); s2_.push_back(a2); s3_.push_back(a3); s4_.push_back(a4);
  for (unsigned long j = 2; j <= max_m; ++j) {
    a1.add_point_inplace(t1(j));
    a2.add_point_inplace(t2(j));
    a3.add_point_inplace(t3(j));
    a4.add_point_inplace(t4(j));
    s1_.push_back(a1); s2_.push_back(a2); s3_.push_back(a3); s4_.push_back(a4);
  }
}

Interval PrefixSums::csum(int which, unsigned long delta, long r) const {
  require(delta >= 3 && delta - 1 <= max_m_ && r >= 1 &&
              static_cast<unsigned long>(r) <= delta - 2,
          "PrefixSums::csum: out of range");
  auto pick = [&](const std::vector<Interval>& s) {
    return s[delta - 1] - s[static_cast<unsigned long>(r)];
  };
  switch (which) {
    case 1: return pick(s1_);
    case 2: return pick(s2_);
    case 3: return pick(s3_);
    case 4: return pick(s4_);
    default: throw std::invalid_argument("PrefixSums::csum: which in 1..4");
  }
}

Interval PrefixSums::f_interval(unsigned long delta, long r) const {
  Interval c1 = csum(1, delta, r), c2 = csum(2, delta, r);
  Interval c3 = csum(3, delta, r), c4 = csum(4, delta, r);
  Integer d(delta);
  Integer d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d;
  Interval f = Interval::point(Rational(r) * p_term(delta), prec_);
  f += Interval::point(Rational(d5), prec_) * c1;
  f += Interval::point(Rational(3 * d4), prec_) * c2;
  f += Interval::point(Rational(d3), prec_) * c3;
  f -= Interval::point(Rational(3, 4) * Rational(d2), prec_) * c4;
  f += Interval::point(Rational(2 * d2), prec_);
  return f;
}

namespace {

Interval threshold_interval(const Rational& c, unsigned long delta, mpfr_prec_t prec) {
  return Interval::point(c, prec) * Interval::point(zpow(delta, 13), prec).cbrt();
}

// Direct-summation interval F at arbitrary precision (escalation path).
Interval f_interval_direct(unsigned long delta, long r, mpfr_prec_t prec) {
  Interval c1(prec), c2(prec), c3(prec), c4(prec);
  for (unsigned long j = static_cast<unsigned long>(r) + 1; j <= delta - 1; ++j) {
    c1.add_point_inplace(t1(j));
    c2.add_point_inplace(t2(j));
    c3.add_point_inplace(t3(j));
    c4.add_point_inplace(t4(j));
  }
  Integer d(delta);
  Integer d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d;
  Interval f = Interval::point(Rational(r) * p_term(delta), prec);
  f += Interval::point(Rational(d5), prec) * c1;
  f += Interval::point(Rational(3 * d4), prec) * c2;
  f += Interval::point(Rational(d3), prec) * c3;
  f -= Interval::point(Rational(3, 4) * Rational(d2), prec) * c4;
  f += Interval::point(Rational(2 * d2), prec);
  return f;
}

constexpr unsigned long kExactFallbackMaxDelta = 20000;

// true <=> f_min(delta) > constant * delta^(13/3), certified.
bool sweep_fails(unsigned long delta, long r_opt, const Rational& constant,
                 const PrefixSums& ps) {
  Interval f = ps.f_interval(delta, r_opt);
  Interval t = threshold_interval(constant, delta, f.precision());
  auto decide = [&](const Interval& fi, const Interval& ti, bool* out) {
    if (fi.definitely_le(ti)) {
      *out = false;
      return true;
    }
    if (ti.definitely_lt(fi)) {
      *out = true;
      return true;
    }
    return false;
  };
  auto rel_margin = [&](const Interval& fi, const Interval& ti) {
    double gap = std::abs(fi.lower_d() - ti.lower_d());
    double scale = std::max(1.0, ti.upper_d());
    return gap / scale;
  };
  bool fail = false;
  bool decided = decide(f, t, &fail);
  bool close = rel_margin(f, t) < 1e-3;
  if (decided && !close) return fail;
  if (delta <= kExactFallbackMaxDelta) {
    return cmp_pow_13_3(f_value(delta, r_opt), constant, delta) == Ordering::Greater;
  }
  for (mpfr_prec_t prec = 256; prec <= 1024; prec *= 2) {
    Interval fp = f_interval_direct(delta, r_opt, prec);
    Interval tp = threshold_interval(constant, delta, prec);
    if (decide(fp, tp, &fail)) return fail;
  }
  return cmp_pow_13_3(f_value(delta, r_opt), constant, delta) == Ordering::Greater;
}

struct Checkpoint {
  Rational constant;
  unsigned long last_delta = 0;
  std::vector<unsigned long> failures;
};

std::optional<Checkpoint> load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
    Checkpoint cp;
    cp.constant = parse_rational(j.at("constant").get<std::string>());
    cp.last_delta = j.at("last_delta").get<unsigned long>();
    for (auto& d : j.at("failures")) cp.failures.push_back(d.get<unsigned long>());
    for (size_t i = 1; i < cp.failures.size(); ++i) {
      if (cp.failures[i] <= cp.failures[i - 1])
        throw CheckpointError("checkpoint failures not strictly ascending");
    }
    return cp;
  } catch (const CheckpointError&) {
    throw;
  } catch (const std::exception& e) {
    throw CheckpointError(std::string("corrupt checkpoint ") + path + ": " + e.what());
  }
}

void save_checkpoint(const std::string& path, const Rational& constant,
                     unsigned long last_delta,
                     const std::vector<unsigned long>& failures) {
  nlohmann::json j;
  j["constant"] = constant.get_str();
  j["last_delta"] = last_delta;
  j["failures"] = failures;
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump();
    if (!out.good()) throw CheckpointError("cannot write checkpoint " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw CheckpointError("cannot rename checkpoint into place: " + path);
}

}  // namespace

SweepReport verify_range(unsigned long delta_min, unsigned long delta_max,
                         const Rational& constant, const SweepOptions& opt) {
  require(delta_min >= 3 && delta_min <= delta_max,
          "verify_range: need 3 <= delta_min <= delta_max");
  require(sgn(constant) > 0, "verify_range: constant must be positive");
  auto t0 = std::chrono::steady_clock::now();

  SweepReport rep;
  rep.delta_min = delta_min;
  rep.delta_max = delta_max;
  rep.constant = constant;

  unsigned long start = delta_min;
  if (!opt.checkpoint_path.empty()) {
    if (auto cp = load_checkpoint(opt.checkpoint_path)) {
      if (cp->constant != constant)
        throw CheckpointError("checkpoint constant mismatch");
      if (cp->last_delta >= delta_min && cp->last_delta <= delta_max) {
        start = cp->last_delta + 1;
        rep.failures = cp->failures;
        rep.resumed_from = cp->last_delta;
      }
    }
  }
  if (start > delta_max) {
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }

  PrefixSums ps(delta_max - 1 < 2 ? 2 : delta_max - 1);
  unsigned threads = std::max(1u, opt.threads);

  // Blocks of checkpoint_stride deltas; each block is split into chunks that
  // workers claim from a shared counter. Per-chunk results are merged in index
  // order, so output is independent of scheduling.
  unsigned long stride = std::max<unsigned long>(1, opt.checkpoint_stride);
  for (unsigned long block_lo = start; block_lo <= delta_max;) {
    unsigned long block_hi = std::min(delta_max, block_lo + stride - 1);
    unsigned long block_n = block_hi - block_lo + 1;
    unsigned long chunk = std::max<unsigned long>(64, block_n / (threads * 8) + 1);
    unsigned long nchunks = (block_n + chunk - 1) / chunk;
    std::vector<std::vector<unsigned long>> chunk_failures(nchunks);
    std::atomic<unsigned long> next{0};
    std::vector<std::string> errors;
    std::mutex err_mu;
    auto worker = [&]() {
      for (;;) {
        unsigned long ci = next.fetch_add(1);
        if (ci >= nchunks) return;
        unsigned long lo = block_lo + ci * chunk;
        unsigned long hi = std::min(block_hi, lo + chunk - 1);
        try {
          for (unsigned long d = lo; d <= hi; ++d) {
            long r = optimal_r(d);
            if (sweep_fails(d, r, constant, ps)) chunk_failures[ci].push_back(d);
          }
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> g(err_mu);
          errors.emplace_back(e.what());
          return;
        }
      }
    };
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    if (!errors.empty()) throw std::runtime_error("sweep worker failed: " + errors.front());
    for (auto& cf : chunk_failures)
      rep.failures.insert(rep.failures.end(), cf.begin(), cf.end());
    if (!opt.checkpoint_path.empty())
      save_checkpoint(opt.checkpoint_path, constant, block_hi, rep.failures);
    block_lo = block_hi + 1;
  }

  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string threshold_string(const Rational& c, unsigned long delta, unsigned places) {
  // floor(c * delta^(13/3) * 10^places) = floor(cbrt(p^3 * delta^13 * 10^(3*places) / q^3))
  const Integer& p = c.get_num();
  const Integer& q = c.get_den();
  Integer num = p * p * p * zpow(delta, 13) * zpow(10, 3 * places);
  Integer den = q * q * q;
  Integer quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Integer root;
  bool exact_root = mpz_root(root.get_mpz_t(), quot.get_mpz_t(), 3) != 0;
  bool exact = exact_root && sgn(rem) == 0;
  std::string s = root.get_str();
  if (places > 0) {
    if (s.size() <= places) s.insert(0, places + 1 - s.size(), '0');
    s.insert(s.size() - places, ".");
    if (exact) {
      // trim trailing zeros of exactly-representable values (table convention)
      while (s.back() == '0') s.pop_back();
      if (s.back() == '.') s.pop_back();
    }
  }
  return s;
}

BoundRow bound_row(unsigned long delta, const Rational& constant) {
  BoundRow row;
  row.delta = delta;
  row.r_opt = delta >= 3 ? optimal_r(delta) : 0;
  row.f_value = f_min_exact(delta);
  row.threshold_constant = constant;
  row.pass = cmp_pow_13_3(row.f_value, constant, delta) != Ordering::Greater;
  row.computed_bound = decimal_render(row.f_value, 3, RenderMode::Truncate);
  row.threshold = threshold_string(constant, delta, 3);
  Rational f3 = row.f_value * row.f_value * row.f_value;
  Rational ratio_hi = cbrt_bounds(f3 / Rational(zpow(delta, 13)), 96).hi;
  row.ratio_upper = decimal_upper(ratio_hi, 6);
  return row;
}

std::vector<BoundRow> appendix_table() {
  Rational c(199, 100);
  std::vector<BoundRow> rows;
  for (unsigned long d = 6; d <= 37; ++d) rows.push_back(bound_row(d, c));
  return rows;
}

MaxRatioReport max_ratio(unsigned long delta_min, unsigned long delta_max) {
  require(delta_min >= 2 && delta_min <= delta_max, "max_ratio: bad range");
  PrefixSums ps(delta_max >= 4 ? delta_max - 1 : 3);
  // Pass 1: interval ratios for every delta.
  std::vector<Interval> ratios;
  ratios.reserve(delta_max - delta_min + 1);
  for (unsigned long d = delta_min; d <= delta_max; ++d) {
    Interval f = (d == 2) ? Interval::point(p_term(2))
                          : ps.f_interval(d, optimal_r(d));
    ratios.push_back(f / Interval::point(zpow(d, 13)).cbrt());
  }
  unsigned long best = delta_min;
  for (unsigned long d = delta_min + 1; d <= delta_max; ++d) {
    if (mpfr_cmp(ratios[d - delta_min].lo_raw(), ratios[best - delta_min].lo_raw()) > 0)
      best = d;
  }
  // Pass 2: settle anything not certifiably below best, exactly:
  // f_a^3 * b^13 vs f_b^3 * a^13.
  Rational fb = f_min_exact(best);
  Rational fb3 = fb * fb * fb;
  for (unsigned long d = delta_min; d <= delta_max; ++d) {
    if (d == best || ratios[d - delta_min].definitely_lt(ratios[best - delta_min]))
      continue;
    Rational fd = f_min_exact(d);
    Rational fd3 = fd * fd * fd;
    if (fd3 * Rational(zpow(best, 13)) > fb3 * Rational(zpow(d, 13))) {
      best = d;
      fb = fd;
      fb3 = fd3;
    }
  }
  MaxRatioReport rep;
  rep.delta_argmax = best;
  RationalBounds rb = cbrt_bounds(fb3 / Rational(zpow(best, 13)), 96);
  rep.ratio_lower = rb.lo;
  rep.ratio_upper = rb.hi;
  rep.ratio_upper_str = decimal_upper(rb.hi, 6);
  return rep;
}

RationalBounds baseline_constant(unsigned long delta) {
  require(delta >= 2, "baseline_constant: delta >= 2");
  RationalBounds a = pow_13_3_bounds(delta, 96);
  RationalBounds b = cbrt_bounds(Rational(zpow(delta, 11)), 96);
  return {2 * a.lo + 3 * b.lo, 2 * a.hi + 3 * b.hi};
}

std::string sweep_report_csv(const SweepReport& r) {
  std::string out = "delta_min,delta_max,constant,failures,elapsed_seconds\n";
  out += std::to_string(r.delta_min) + "," + std::to_string(r.delta_max) + "," +
         r.constant.get_str() + ",\"";
  for (size_t i = 0; i < r.failures.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(r.failures[i]);
  }
  out += "\"," + std::to_string(r.elapsed_seconds) + "\n";
  return out;
}

std::string bound_rows_csv(const std::vector<BoundRow>& rows) {
  std::string out = "delta,r_opt,computed_bound,threshold,verdict\n";
  for (const auto& row : rows) {
    out += std::to_string(row.delta) + "," + std::to_string(row.r_opt) + "," +
           row.computed_bound + "," + row.threshold + "," +
           (row.pass ? "Pass" : "Fail") + "\n";
  }
  return out;
}

}  // namespace vlab::planes
