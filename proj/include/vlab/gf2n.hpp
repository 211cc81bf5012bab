#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vlab::gf2n {

// Thrown when an enumeration would exceed its work budget.  The caller gets a
// refusal, never a partial answer.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

using Element = std::uint32_t;  // n-bit polynomial-basis coefficient mask, n <= 16

enum class ModulusChoice { LexSmallest, LexLargest };

// Immutable GF(2^n) context: modulus, precomputed inverse table, and the raw
// field size.  Safe to share across threads once constructed.
class FieldCtx {
 public:
  // modulus_mask is an (n+1)-bit mask with bit n set; it must be irreducible
  // over GF(2) (checked exhaustively by trial division).
  FieldCtx(int n, std::uint32_t modulus_mask);

  // Convenience constructor using the built-in modulus tables.
  static FieldCtx make(int n, ModulusChoice choice = ModulusChoice::LexSmallest);

  int n() const { return n_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint64_t q() const { return std::uint64_t{1} << n_; }

  Element add(Element a, Element b) const { return a ^ b; }
  Element mul(Element a, Element b) const;
  Element pow(Element a, std::uint64_t e) const;
  // f_inv(x) = x^{2^n - 2}: the multiplicative inverse for x != 0, and 0 at 0.
  Element f_inv(Element x) const { return inv_table_[x]; }

 private:
  int n_;
  std::uint32_t modulus_;
  std::vector<Element> inv_table_;
};

// Lexicographically smallest / largest irreducible polynomial of degree n
// (as a bit mask), found by exhaustive search.
std::uint32_t irreducible_modulus(int n, ModulusChoice choice);
bool is_irreducible(int n, std::uint32_t mask);

// Canonical affine k-flat: basis rows in reduced row echelon form (pivots are
// the highest set bits, descending), offset has zeros in all pivot columns.
struct Flat {
  int k = 0;
  std::vector<Element> basis;
  Element offset = 0;

  // The 2^k points of the flat, in Gray-code order starting from offset.
  std::vector<Element> points() const;
  std::string to_hex() const;
};

// Number of k-dimensional linear subspaces of F_2^n.
std::uint64_t gaussian_binomial(int n, int k);
// Total number of affine k-flats: 2^{n-k} * gaussian_binomial(n, k).
std::uint64_t flat_count(int n, int k);

// Calls visit for each affine k-flat of F_2^n exactly once, in a canonical
// deterministic order.  Requires 1 <= k <= n.
void enumerate_flats(const FieldCtx& ctx, int k,
                     const std::function<void(const Flat&)>& visit);

struct SumFreeResult {
  bool verdict = false;          // true iff no flat sums to zero under f_inv
  std::uint64_t zero_sum_flats = 0;
  std::optional<Flat> witness;   // first zero-sum flat in enumeration order
};

inline constexpr std::uint64_t kFlatsBudget = std::uint64_t{1} << 30;

// Exhaustive kth-order sum-freeness test of f_inv.  Work is measured as
// flat_count * 2^k element operations; exceeding flats_budget throws
// BudgetError.
SumFreeResult is_sum_free(const FieldCtx& ctx, int k,
                          std::uint64_t flats_budget = kFlatsBudget);

// A partition of 2^{k-1} into powers of two, at most k parts, nonincreasing.
struct DyadicPartition {
  std::vector<int> parts;
};

// All 2-adic partitions of 2^{k-1} with at most k parts, lexicographically
// sorted (largest-first within each partition).  Requires 1 <= k <= 8.
std::vector<DyadicPartition> gen_partitions(int k);

// Evaluator for Theta_k = sum over the partitions of the monomial symmetric
// polynomials, and the Moore determinant.  Holds precomputed exponent
// assignments so batch evaluation over q^k points is cheap.
class ThetaEvaluator {
 public:
  ThetaEvaluator(const FieldCtx& ctx, int k);
  Element eval(const std::vector<Element>& point) const;

 private:
  const FieldCtx& ctx_;
  int k_;
  // Each monomial is a length-k exponent vector (a distinct permutation of a
  // padded partition); exponents are powers of two or zero.
  std::vector<std::vector<std::uint32_t>> monomials_;
};

Element theta_eval(const FieldCtx& ctx, int k, const std::vector<Element>& point);

// Determinant of the k x k Moore matrix with entry (i,j) = x_i^{2^{j-1}}.
Element moore_det(const FieldCtx& ctx, const std::vector<Element>& point);

struct VarietyCounts {
  int n = 0;
  int k = 0;
  std::uint64_t theta_zeros = 0;   // points with Theta_k = 0
  std::uint64_t intersection = 0;  // points with Theta_k = 0 and Delta = 0
  std::uint64_t difference = 0;    // theta_zeros - intersection
};

inline constexpr std::uint64_t kVarietyBudget = std::uint64_t{1} << 24;

// Exhaustive count of V(Theta_k) and V(Theta_k) ∩ V(Delta) over F_q^k.
// Requires q^k <= variety_budget; asserts intersection <= 2^{2(k-1)} q^{k-2}.
VarietyCounts variety_counts(const FieldCtx& ctx, int k,
                             std::uint64_t variety_budget = kVarietyBudget);

struct CrossCheckReport {
  SumFreeResult sum_free;
  VarietyCounts counts;
  bool implication_holds = false;  // difference > 0  =>  verdict false
  bool converse_observed = false;  // difference == 0 and verdict true
};

// Runs both oracles and asserts the direction used in the derivation:
// difference > 0 implies not sum-free.  The converse is recorded, not asserted.
CrossCheckReport cross_check(const FieldCtx& ctx, int k);

std::string cross_check_json(const CrossCheckReport& r, int n, int k);
std::string sum_free_json(const FieldCtx& ctx, int k, const SumFreeResult& r);
std::string variety_json(const VarietyCounts& c);

}  // namespace vlab::gf2n
