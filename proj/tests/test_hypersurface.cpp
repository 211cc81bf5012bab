#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vlab/gf2n.hpp"
#include "vlab/hypersurface.hpp"

using namespace vlab;
using namespace vlab::hypersurface;

TEST_CASE("residual ratios at the derivation points") {
  // (4/3)*1.99 + (2*9+3+1+4/3)/3^(13/3) ~ 2.8525...
  const Rational r3 = residual_ratio(Rational(199, 100), 3);
  CHECK(r3 > Rational(28520, 10000));
  CHECK(r3 < Rational(28535, 10000));

  const Rational r3b = residual_ratio(Rational(2043, 1000), 3);
  CHECK(r3b > Rational(29225, 10000));
  CHECK(r3b < Rational(29241, 10000));

  const Rational r8 = residual_ratio(Rational(2043, 1000), 8);
  CHECK(r8 > Rational(27405, 10000));
  CHECK(r8 < Rational(27410, 10000));
}

TEST_CASE("derive_g certifies the three claimed constants") {
  const auto g286 = derive_g(Rational(199, 100), 3, Rational(286, 100),
                             std::make_pair(6ul, 37ul));
  CHECK(g286.pass);
  CHECK(g286.g_minimal <= Rational(286, 100));

  const auto g2924 = derive_g(Rational(2043, 1000), 3, Rational(2924, 1000));
  CHECK(g2924.pass);

  const auto g2741 = derive_g(Rational(2043, 1000), 8, Rational(2741, 1000));
  CHECK(g2741.pass);
}

TEST_CASE("derived minima are near their claimed values") {
  CHECK(derive_g(Rational(199, 100), 3, Rational(286, 100)).g_minimal -
            Rational(28525, 10000) <
        Rational(1, 1000));
  CHECK(derive_g(Rational(2043, 1000), 3, Rational(2924, 1000)).g_minimal -
            Rational(29231, 10000) <
        Rational(1, 1000));
  CHECK(derive_g(Rational(2043, 1000), 8, Rational(2741, 1000)).g_minimal -
            Rational(27409, 10000) <
        Rational(1, 1000));
}

TEST_CASE("degree-2 constant") {
  const auto b = delta2_constant();
  CHECK(b.hi <= Rational(1803, 1000));
  CHECK(b.lo > Rational(1802, 1000));
  // within 1e-3 of the recomputed 1.8024
  CHECK(b.hi - Rational(18024, 10000) < Rational(1, 1000));
}

TEST_CASE("estimate_bound validates delta/mode pairings") {
  CHECK_THROWS(estimate_bound(6, 4, Integer(4), EstimateMode::Thm31));
  CHECK_THROWS(estimate_bound(5, 4, Integer(4), EstimateMode::Lemma32G2741));
  CHECK_THROWS(estimate_bound(3, 4, Integer(4), EstimateMode::Delta2));
}

TEST_CASE("estimate_bound validity against exhaustive theta counts") {
  struct Pair {
    int n, k;
  };
  // k=2 at n >= 6 is excluded: the degree-2 surface splits into two lines
  // over fields containing GF(4), so the irreducible point-count estimate
  // does not apply there (and indeed fails numerically).
  for (const Pair p : {Pair{4, 2}, Pair{5, 2}, Pair{5, 3}, Pair{6, 3},
                       Pair{7, 3}, Pair{5, 4}}) {
    const auto ctx = gf2n::FieldCtx::make(p.n);
    const auto counts = gf2n::variety_counts(ctx, p.k);
    const unsigned long delta = 1ul << (p.k - 1);
    EstimateMode mode;
    if (delta == 2) {
      mode = EstimateMode::Delta2;
    } else if (delta >= 8) {
      mode = EstimateMode::Lemma32G2741;
    } else {
      mode = EstimateMode::Thm31;
    }
    const Integer q(ctx.q());
    const auto est =
        estimate_bound(delta, static_cast<unsigned long>(p.k), q, mode);
    Integer qk1;
    mpz_pow_ui(qk1.get_mpz_t(), q.get_mpz_t(), p.k - 1);
    Rational observed =
        Rational(Integer(counts.theta_zeros)) - Rational(qk1);
    if (observed < 0) observed = -observed;
    CHECK(observed <= est.error_upper);
    CHECK(est.main_term == qk1);
  }
}
