#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "vlab/planes.hpp"

using namespace vlab;
using namespace vlab::planes;

namespace {

// Direct-summation oracle for F(delta, r), written independently of the
// library's prefix machinery.
Rational f_direct(unsigned long delta, long r) {
  const Rational d(static_cast<unsigned long>(delta));
  Rational c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  for (long j = r + 1; j <= static_cast<long>(delta) - 1; ++j) {
    Rational j1(j), j2(j * j);
    Rational j3 = j1 * j2, j4 = j2 * j2;
    c1 += 1 / j3 - Rational(1, 8) / j4;
    c2 += 1 / j2 - Rational(1, 4) / j3;
    c3 += 2 / j1 - Rational(11, 8) / j2;
    c4 += 1 / j1;
  }
  Rational p = Rational(3, 2) * d * d * d * d - 2 * d * d * d +
               Rational(5, 2) * d * d;
  return Rational(r) * p + d * d * d * d * d * c1 + 3 * d * d * d * d * c2 +
         d * d * d * c3 - Rational(3, 4) * d * d * c4 + 2 * d * d;
}

}  // namespace

TEST_CASE("P term values") {
  CHECK(p_term(2) == Rational(18));
  CHECK(p_term(3) == Rational(90));
  CHECK(p_term(6) == Rational(1602));
}

TEST_CASE("c-sums at delta=3, r=1") {
  const auto cs = compute_csums(3, 1);
  // Single term j=2: 1/8 - 1/128 = 15/128, etc.
  CHECK(cs.c1 == Rational(15, 128));
  CHECK(cs.c2 == Rational(1, 4) - Rational(1, 32));
  CHECK(cs.c3 == Rational(1) - Rational(11, 32));
  CHECK(cs.c4 == Rational(1, 2));
}

TEST_CASE("f_value matches the direct-summation oracle") {
  for (unsigned long d = 3; d <= 50; ++d) {
    for (long r = 1; r <= static_cast<long>(d) - 2; ++r) {
      CHECK(f_value(d, r) == f_direct(d, r));
    }
  }
}

TEST_CASE("first_difference_sign matches the definition") {
  for (unsigned long d = 3; d <= 60; ++d) {
    for (long r = 1; r <= static_cast<long>(d) - 3; ++r) {
      const Rational diff = f_value(d, r + 1) - f_value(d, r);
      const int sign = first_difference_sign(d, r);
      CHECK(sign == sgn(diff));
    }
  }
}

TEST_CASE("optimal_r equals exhaustive value search for delta <= 300") {
  for (unsigned long d = 3; d <= 300; ++d) {
    CHECK(optimal_r(d) == optimal_r_exhaustive(d));
  }
}

TEST_CASE("first-difference sign pattern is monotone for delta <= 2000") {
  for (unsigned long d = 3; d <= 2000; ++d) {
    CHECK(r_search_brute_force_valid(d));
  }
}

TEST_CASE("f_min_exact known values") {
  CHECK(f_min_exact(2) == Rational(18));
  CHECK(f_min_exact(3) == f_direct(3, optimal_r(3)));
}

TEST_CASE("prefix-sum intervals contain the exact values, delta <= 200") {
  PrefixSums ps(200);
  for (unsigned long d = 3; d <= 200; ++d) {
    const long r = optimal_r(d);
    const Rational exact = f_value(d, r);
    const Interval iv = ps.f_interval(d, r);
    CHECK(iv.lower() <= exact);
    CHECK(iv.upper() >= exact);
    CHECK(iv.rel_width() < 1e-12);
  }
}

TEST_CASE("appendix frozen rows") {
  const auto rows = appendix_table();
  REQUIRE(rows.size() == 32);
  CHECK(rows.front().delta == 6);
  CHECK(rows.front().r_opt == 2);
  CHECK(rows.front().computed_bound == "4755.719");
  CHECK(rows.front().threshold == "4686.426");
  const auto& r8 = rows[2];
  CHECK(r8.delta == 8);
  CHECK(r8.computed_bound == "16734.776");
  CHECK(r8.threshold == "16302.08");  // exact value, trailing zero trimmed
  const auto& r37 = rows.back();
  CHECK(r37.delta == 37);
  CHECK(r37.r_opt == 3);
  CHECK(r37.computed_bound == "12430121.798");
  CHECK(r37.threshold == "12427789.273");
  for (const auto& row : rows) CHECK_FALSE(row.pass);
}

TEST_CASE("threshold_string") {
  CHECK(threshold_string(Rational(199, 100), 8, 3) == "16302.08");
  CHECK(threshold_string(Rational(199, 100), 27, 3) == "3172702.77");
  CHECK(threshold_string(Rational(199, 100), 6, 3) == "4686.426");
}

TEST_CASE("mini-table rows delta=5 and delta=38") {
  const auto r5 = bound_row(5, Rational(199, 100));
  CHECK(r5.computed_bound == "2114.112");
  CHECK(r5.pass);
  const auto r38 = bound_row(38, Rational(199, 100));
  CHECK(r38.computed_bound == "13920945.841");
  CHECK(r38.pass);
}

TEST_CASE("verify_range failure sets on a small range") {
  const auto rep199 = verify_range(3, 1000, Rational(199, 100));
  std::vector<unsigned long> expect;
  for (unsigned long d = 6; d <= 37; ++d) expect.push_back(d);
  CHECK(rep199.failures == expect);

  const auto rep2043 = verify_range(3, 1000, Rational(2043, 1000));
  CHECK(rep2043.failures.empty());
}

TEST_CASE("sweep is deterministic across thread counts") {
  std::vector<std::vector<unsigned long>> results;
  for (unsigned t : {1u, 4u, 8u}) {
    SweepOptions opt;
    opt.threads = t;
    results.push_back(verify_range(3, 2000, Rational(199, 100), opt).failures);
  }
  CHECK(results[0] == results[1]);
  CHECK(results[1] == results[2]);
}

TEST_CASE("checkpoint resume and corruption") {
  const std::string path = "test_planes_ckpt.json";
  std::remove(path.c_str());

  SweepOptions opt;
  opt.checkpoint_path = path;
  opt.checkpoint_stride = 100;
  const auto first = verify_range(3, 500, Rational(199, 100), opt);

  // Resuming an already-complete range must reproduce the same failures.
  const auto resumed = verify_range(3, 500, Rational(199, 100), opt);
  CHECK(resumed.failures == first.failures);
  CHECK(resumed.resumed_from > 0);

  // A corrupt checkpoint is an error, not a silent restart.
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  CHECK_THROWS_AS(verify_range(3, 500, Rational(199, 100), opt),
                  CheckpointError);
  std::remove(path.c_str());
}

TEST_CASE("max_ratio attains its maximum at delta=8 with certified bounds") {
  const auto rep = max_ratio(2, 100);
  CHECK(rep.delta_argmax == 8);
  CHECK(rep.ratio_lower > Rational(20428, 10000));
  CHECK(rep.ratio_upper < Rational(2043, 1000));
}

TEST_CASE("baseline constant encloses 2 d^(13/3) + 3 d^(11/3)") {
  const auto b = baseline_constant(8);
  // 2*8192 + 3*8^(11/3) = 16384 + 3*2048 = 22528 exactly.
  CHECK(b.lo <= 22528);
  CHECK(b.hi >= 22528);
}
