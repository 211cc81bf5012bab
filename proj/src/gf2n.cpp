#include "vlab/gf2n.hpp"

#include <json.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>

namespace vlab::gf2n {
namespace {

// Carry-less product of two masks of degree < 17 each (fits in 64 bits).
std::uint64_t clmul(std::uint32_t a, std::uint32_t b) {
  std::uint64_t acc = 0;
  while (b != 0) {
    acc ^= std::uint64_t{a} << std::countr_zero(b);
    b &= b - 1;
  }
  return acc;
}

// Reduce a carry-less product modulo the degree-n modulus mask.
std::uint32_t reduce(std::uint64_t v, int n, std::uint32_t modulus) {
  for (int d = 63 - std::countl_zero(v | 1); d >= n && v >> n != 0;
       d = 63 - std::countl_zero(v | 1)) {
    v ^= std::uint64_t{modulus} << (d - n);
  }
  return static_cast<std::uint32_t>(v);
}

// Remainder of polynomial a modulo polynomial m (deg m = dm), over GF(2).
std::uint32_t poly_mod(std::uint64_t a, std::uint32_t m, int dm) {
  while (a >> dm != 0) {
    int d = 63 - std::countl_zero(a);
    a ^= std::uint64_t{m} << (d - dm);
  }
  return static_cast<std::uint32_t>(a);
}

void check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error(what);
}

}  // namespace

bool is_irreducible(int n, std::uint32_t mask) {
  if (n < 1 || (mask >> n) != 1u) return false;
  if ((mask & 1u) == 0) return n == 1 && mask == 2u;  // divisible by x
  // Trial division by every polynomial of degree 1..n/2.
  for (int d = 1; 2 * d <= n; ++d) {
    for (std::uint32_t f = (1u << d); f < (2u << d); ++f) {
      if (poly_mod(mask, f, d) == 0) return false;
    }
  }
  return true;
}

std::uint32_t irreducible_modulus(int n, ModulusChoice choice) {
  check(n >= 2 && n <= 16, "modulus degree out of range [2,16]");
  if (choice == ModulusChoice::LexSmallest) {
    for (std::uint32_t m = (1u << n) | 1u; m < (2u << n); m += 2) {
      if (is_irreducible(n, m)) return m;
    }
  } else {
    for (std::uint32_t m = (2u << n) - 1; m > (1u << n); m -= 2) {
      if (is_irreducible(n, m)) return m;
    }
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

FieldCtx::FieldCtx(int n, std::uint32_t modulus_mask) : n_(n), modulus_(modulus_mask) {
  check(n >= 2 && n <= 16, "field degree out of range [2,16]");
  check(is_irreducible(n, modulus_mask), "modulus is not irreducible");
  const std::uint64_t size = q();
  inv_table_.resize(size);
  const std::uint64_t e = size - 2;
  for (std::uint64_t x = 0; x < size; ++x) {
    inv_table_[x] = pow(static_cast<Element>(x), e);
  }
}

FieldCtx FieldCtx::make(int n, ModulusChoice choice) {
  return FieldCtx(n, irreducible_modulus(n, choice));
}

Element FieldCtx::mul(Element a, Element b) const {
  return reduce(clmul(a, b), n_, modulus_);
}

Element FieldCtx::pow(Element a, std::uint64_t e) const {
  Element result = 1;
  Element base = a;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::vector<Element> Flat::points() const {
  std::vector<Element> pts;
  pts.reserve(std::size_t{1} << k);
  Element cur = offset;
  pts.push_back(cur);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
    cur ^= basis[std::countr_zero(i)];
    pts.push_back(cur);
  }
  return pts;
}

std::string Flat::to_hex() const {
  std::ostringstream os;
  os << std::hex << "basis=[";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    os << (i ? "," : "") << "0x" << basis[i];
  }
  os << "] offset=0x" << offset;
  return os.str();
}

std::uint64_t gaussian_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  // Product form prod_{i=0}^{k-1} (2^{n-i} - 1) / (2^{k-i} - 1), computed in
  // arbitrary precision because the unreduced numerator overflows 64 bits.
  mpz_class num = 1;
  mpz_class den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (mpz_class{1} << (n - i)) - 1;
    den *= (mpz_class{1} << (k - i)) - 1;
  }
  mpz_class result = num / den;
  check(result.fits_ulong_p(), "gaussian binomial out of 64-bit range");
  return result.get_ui();
}

std::uint64_t flat_count(int n, int k) {
  return (std::uint64_t{1} << (n - k)) * gaussian_binomial(n, k);
}

void enumerate_flats(const FieldCtx& ctx, int k,
                     const std::function<void(const Flat&)>& visit) {
  const int n = ctx.n();
  check(k >= 1 && k <= n, "flat dimension out of range [1,n]");

  // Pivot columns as bit positions, descending: comb[0] > ... > comb[k-1].
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = n - 1 - i;

  Flat flat;
  flat.k = k;
  flat.basis.resize(k);

  while (true) {
    std::uint32_t pivot_mask = 0;
    for (int p : comb) pivot_mask |= 1u << p;

    // Free positions for basis row i: non-pivot bits strictly below comb[i].
    std::vector<std::vector<int>> free_pos(k);
    int total_free = 0;
    for (int i = 0; i < k; ++i) {
      for (int b = 0; b < comb[i]; ++b) {
        if (!(pivot_mask & (1u << b))) free_pos[i].push_back(b);
      }
      total_free += static_cast<int>(free_pos[i].size());
    }
    check(total_free < 63, "flat enumeration too large for this dimension");
    // Non-pivot positions, for offset enumeration.
    std::vector<int> off_pos;
    for (int b = 0; b < n; ++b) {
      if (!(pivot_mask & (1u << b))) off_pos.push_back(b);
    }

    for (std::uint64_t fa = 0; fa < (std::uint64_t{1} << total_free); ++fa) {
      std::uint64_t bits = fa;
      for (int i = 0; i < k; ++i) {
        Element row = 1u << comb[i];
        for (int b : free_pos[i]) {
          if (bits & 1) row |= 1u << b;
          bits >>= 1;
        }
        flat.basis[i] = row;
      }
      for (std::uint64_t oa = 0; oa < (std::uint64_t{1} << (n - k)); ++oa) {
        Element off = 0;
        for (int j = 0; j < n - k; ++j) {
          if (oa & (std::uint64_t{1} << j)) off |= 1u << off_pos[j];
        }
        flat.offset = off;
        visit(flat);
      }
    }

    // Next pivot combination (descending lexicographic).
    int i = k - 1;
    while (i >= 0 && comb[i] == k - 1 - i) --i;
    if (i < 0) break;
    --comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[i] - (j - i);
  }
}

SumFreeResult is_sum_free(const FieldCtx& ctx, int k, std::uint64_t flats_budget) {
  const int n = ctx.n();
  check(k >= 1 && k <= n, "sum-free order out of range [1,n]");
  const std::uint64_t work = flat_count(n, k) << k;
  if (work > flats_budget) {
    throw BudgetError("sum-freeness enumeration over n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + " needs " + std::to_string(work) +
                      " element operations, over budget " + std::to_string(flats_budget));
  }

  SumFreeResult result;
  result.verdict = true;
  enumerate_flats(ctx, k, [&](const Flat& flat) {
    Element cur = flat.offset;
    Element sum = ctx.f_inv(cur);
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
      cur ^= flat.basis[std::countr_zero(i)];
      sum ^= ctx.f_inv(cur);
    }
    if (sum == 0) {
      if (result.verdict) result.witness = flat;
      result.verdict = false;
      ++result.zero_sum_flats;
    }
  });
  return result;
}

std::vector<DyadicPartition> gen_partitions(int k) {
  check(k >= 1 && k <= 8, "partition order out of range [1,8]");
  const int target = 1 << (k - 1);
  std::vector<DyadicPartition> out;
  std::vector<int> parts;
  // Largest-first recursion yields descending lexicographic order directly.
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back({parts});
      return;
    }
    if (static_cast<int>(parts.size()) == k) return;
    int p = max_part;
    while (p > remaining) p >>= 1;
    for (; p >= 1; p >>= 1) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  rec(rec, target, target);
  return out;
}

ThetaEvaluator::ThetaEvaluator(const FieldCtx& ctx, int k) : ctx_(ctx), k_(k) {
  check(k >= 1 && k <= 8, "theta order out of range [1,8]");
  for (const DyadicPartition& p : gen_partitions(k)) {
    // Pad to k exponents, sort ascending, then walk all distinct permutations.
    std::vector<std::uint32_t> expo(k, 0);
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
      expo[i] = static_cast<std::uint32_t>(p.parts[i]);
    }
    std::sort(expo.begin(), expo.end());
    do {
      monomials_.push_back(expo);
    } while (std::next_permutation(expo.begin(), expo.end()));
  }
}

Element ThetaEvaluator::eval(const std::vector<Element>& point) const {
  check(static_cast<int>(point.size()) == k_, "theta point has wrong arity");
  // Iterated squares: sq[i][j] = x_i^{2^j}.
  std::vector<std::array<Element, 8>> sq(k_);
  for (int i = 0; i < k_; ++i) {
    Element v = point[i];
    for (int j = 0; j < k_; ++j) {
      sq[i][j] = v;
      v = ctx_.mul(v, v);
    }
  }
  Element total = 0;
  for (const auto& mono : monomials_) {
    Element term = 1;
    for (int i = 0; i < k_ && term != 0; ++i) {
      if (mono[i] != 0) {
        term = ctx_.mul(term, sq[i][std::countr_zero(mono[i])]);
      }
    }
    total ^= term;
  }
  return total;
}

Element theta_eval(const FieldCtx& ctx, int k, const std::vector<Element>& point) {
  return ThetaEvaluator(ctx, k).eval(point);
}

Element moore_det(const FieldCtx& ctx, const std::vector<Element>& point) {
  const int k = static_cast<int>(point.size());
  check(k >= 1 && k <= 8, "moore order out of range [1,8]");
  // m[i][j] = x_i^{2^j}, j = 0..k-1 (paper indexing j-1 shifted to 0-based).
  std::vector<std::vector<Element>> m(k, std::vector<Element>(k));
  for (int i = 0; i < k; ++i) {
    Element v = point[i];
    for (int j = 0; j < k; ++j) {
      m[i][j] = v;
      v = ctx.mul(v, v);
    }
  }
  // Gaussian elimination; over a field of characteristic 2 row swaps do not
  // change the determinant's sign.
  Element det = 1;
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int row = col; row < k; ++row) {
      if (m[row][col] != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) return 0;
    std::swap(m[col], m[pivot]);
    det = ctx.mul(det, m[col][col]);
    const Element inv = ctx.f_inv(m[col][col]);
    for (int row = col + 1; row < k; ++row) {
      if (m[row][col] == 0) continue;
      const Element factor = ctx.mul(m[row][col], inv);
      for (int j = col; j < k; ++j) {
        m[row][j] ^= ctx.mul(factor, m[col][j]);
      }
    }
  }
  return det;
}

VarietyCounts variety_counts(const FieldCtx& ctx, int k, std::uint64_t variety_budget) {
  const int n = ctx.n();
  check(k >= 1 && k <= 8, "variety order out of range [1,8]");
  const std::uint64_t q = ctx.q();
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (total > variety_budget / q) {
      throw BudgetError("variety enumeration over n=" + std::to_string(n) + ", k=" +
                        std::to_string(k) + " exceeds point budget " +
                        std::to_string(variety_budget));
    }
    total *= q;
  }

  ThetaEvaluator theta(ctx, k);
  VarietyCounts counts;
  counts.n = n;
  counts.k = k;
  std::vector<Element> point(k, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (int i = 0; i < k; ++i) {
      point[i] = static_cast<Element>(t & (q - 1));
      t >>= n;
    }
    if (theta.eval(point) == 0) {
      ++counts.theta_zeros;
      if (moore_det(ctx, point) == 0) ++counts.intersection;
    }
  }
  counts.difference = counts.theta_zeros - counts.intersection;

  if (k >= 2) {
    // Intersection bound (2^{k-1})^2 q^{k-2}: Theta_k restricted to the locus
    // where the Moore determinant vanishes.
    std::uint64_t bound = std::uint64_t{1} << (2 * (k - 1));
    for (int i = 0; i < k - 2; ++i) bound *= q;
    check(counts.intersection <= bound, "intersection exceeds its degree bound");
  }
  return counts;
}

CrossCheckReport cross_check(const FieldCtx& ctx, int k) {
  CrossCheckReport report;
  report.sum_free = is_sum_free(ctx, k);
  report.counts = variety_counts(ctx, k);
  report.implication_holds =
      report.counts.difference == 0 || !report.sum_free.verdict;
  report.converse_observed =
      report.counts.difference == 0 && report.sum_free.verdict;
  check(report.implication_holds,
        "variety difference > 0 must imply a zero-sum flat");
  return report;
}

std::string cross_check_json(const CrossCheckReport& r, int n, int k) {
  nlohmann::json j{{"n", n},
                   {"k", k},
                   {"sum_free", r.sum_free.verdict},
                   {"zero_sum_flats", r.sum_free.zero_sum_flats},
                   {"theta_zeros", r.counts.theta_zeros},
                   {"intersection", r.counts.intersection},
                   {"difference", r.counts.difference},
                   {"implication_holds", r.implication_holds},
                   {"converse_observed", r.converse_observed}};
  if (r.sum_free.witness) j["witness"] = r.sum_free.witness->to_hex();
  return j.dump(2);
}

std::string sum_free_json(const FieldCtx& ctx, int k, const SumFreeResult& r) {
  nlohmann::json j{{"n", ctx.n()},
                   {"k", k},
                   {"sum_free", r.verdict},
                   {"zero_sum_flats", r.zero_sum_flats}};
  if (r.witness) j["witness"] = r.witness->to_hex();
  return j.dump(2);
}

std::string variety_json(const VarietyCounts& c) {
  nlohmann::json j{{"n", c.n},
                   {"k", c.k},
                   {"theta_zeros", c.theta_zeros},
                   {"intersection", c.intersection},
                   {"difference", c.difference}};
  return j.dump(2);
}

}  // namespace vlab::gf2n
