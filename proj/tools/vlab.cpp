#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "vlab/asymptotic.hpp"
#include "vlab/carlet.hpp"
#include "vlab/exact.hpp"
#include "vlab/gf2n.hpp"
#include "vlab/hypersurface.hpp"
#include "vlab/planes.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAssertion = 2;
constexpr int kExitCheckpoint = 3;
constexpr int kExitBudget = 4;

unsigned default_threads() {
  if (const char* env = std::getenv("VLAB_THREADS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

// "6-37", "4,7,9" or a mix; empty string means the empty set.
std::vector<unsigned long> parse_delta_set(const std::string& text) {
  std::vector<unsigned long> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    const std::size_t dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(std::stoul(item));
    } else {
      const unsigned long lo = std::stoul(item.substr(0, dash));
      const unsigned long hi = std::stoul(item.substr(dash + 1));
      for (unsigned long d = lo; d <= hi; ++d) out.push_back(d);
    }
  }
  return out;
}

int cmd_verify_planes(unsigned long delta_min, unsigned long delta_max,
                      const std::string& constant_str, unsigned threads,
                      const std::string& checkpoint,
                      const std::string& expect_failures, bool expect_set) {
  using namespace vlab;
  const Rational constant = parse_rational(constant_str);

  std::vector<unsigned long> expected;
  if (expect_set) {
    expected = parse_delta_set(expect_failures);
  } else if (constant == parse_rational("199/100")) {
    for (unsigned long d = 6; d <= 37; ++d) expected.push_back(d);
  } else if (constant == parse_rational("2043/1000")) {
    // empty
  } else {
    std::cerr << "--expect-failures is required for constant " << constant_str
              << "\n";
    return kExitUsage;
  }
  std::vector<unsigned long> expected_in_range;
  for (unsigned long d : expected) {
    if (d >= delta_min && d <= delta_max) expected_in_range.push_back(d);
  }

  planes::SweepOptions opt;
  opt.threads = threads;
  opt.checkpoint_path = checkpoint;
  const planes::SweepReport report =
      planes::verify_range(delta_min, delta_max, constant, opt);
  std::cout << planes::sweep_report_csv(report);

  if (report.failures != expected_in_range) {
    std::cerr << "failure set does not match the expected exceptional set\n";
    return kExitAssertion;
  }
  return kExitOk;
}

int cmd_appendix_table() {
  const auto rows = vlab::planes::appendix_table();
  std::cout << vlab::planes::bound_rows_csv(rows);
  if (rows.size() != 32) {
    std::cerr << "expected 32 exceptional rows\n";
    return kExitAssertion;
  }
  return kExitOk;
}

int cmd_asymptotic(unsigned long m, const std::string& constant_str,
                   unsigned long delta_start) {
  using namespace vlab;
  const Rational constant = parse_rational(constant_str);
  const Integer big_m(static_cast<unsigned long>(m));

  const auto params = asymptotic::make_params(big_m);
  const Interval lead =
      asymptotic::leading_coefficient(params.gamma, params.lambda);
  const Interval lam = asymptotic::lambda_optimum();
  const Interval limit = asymptotic::lambda_objective(lam);
  std::cout << "lambda in [" << lam.to_string(10) << "]\n"
            << "leading coefficient at " << m << " in [" << lead.to_string(10)
            << "]\n"
            << "limit constant in [" << limit.to_string(10) << "]\n"
            << "projected constant at 4e7 in ["
            << asymptotic::projected_constant(Integer(40000000)).to_string(10)
            << "]\n";

  const auto tail =
      asymptotic::verify_tail(constant, Integer(static_cast<unsigned long>(delta_start)));
  std::cout << asymptotic::tail_report_json(tail) << "\n";
  if (tail.verdict != asymptotic::TailVerdict::Certified) {
    std::cerr << "tail certification did not succeed\n";
    return kExitAssertion;
  }
  return kExitOk;
}

int cmd_derive_g(const std::string& b_str, unsigned long delta_min,
                 const std::string& g_str) {
  using namespace vlab;
  const Rational b = parse_rational(b_str);
  Rational g_paper;
  if (!g_str.empty()) {
    g_paper = parse_rational(g_str);
  } else if (b == parse_rational("199/100") && delta_min == 3) {
    g_paper = parse_rational("286/100");
  } else if (b == parse_rational("2043/1000") && delta_min == 3) {
    g_paper = parse_rational("2924/1000");
  } else if (b == parse_rational("2043/1000") && delta_min == 8) {
    g_paper = parse_rational("2741/1000");
  } else {
    std::cerr << "--g is required for this (b, delta-min) pair\n";
    return kExitUsage;
  }
  std::optional<std::pair<unsigned long, unsigned long>> excluded;
  if (b == parse_rational("199/100")) excluded = {{6, 37}};

  const auto d = hypersurface::derive_g(b, delta_min, g_paper, excluded);
  std::cout << "b=" << b << " delta>=" << delta_min << " derived g <= "
            << decimal_upper(d.g_minimal, 6) << " claimed " << d.g_paper
            << (d.pass ? " PASS" : " FAIL") << "\n";
  return d.pass ? kExitOk : kExitAssertion;
}

int cmd_carlet_table(unsigned k_min, unsigned k_max, const std::string& policy,
                     const std::string& format) {
  using namespace vlab;
  const carlet::GPolicy p =
      policy == "best" ? carlet::GPolicy::Best : carlet::GPolicy::Paper;
  const auto rows = carlet::carlet_table(k_min, k_max, p);
  if (format == "json") {
    std::cout << carlet::carlet_table_json(rows) << "\n";
  } else {
    std::cout << carlet::carlet_table_csv(rows);
  }
  for (const auto& row : rows) {
    if (row.external) continue;
    // Theorem bound over the integers: n_min <= ceil(13k/3 - 2).
    if (row.n_min > (13ul * row.k - 4) / 3) {
      std::cerr << "row k=" << row.k << " violates the 13k/3 - 2 bound\n";
      return kExitAssertion;
    }
  }
  return kExitOk;
}

int cmd_carlet_asymptotic() {
  using namespace vlab;
  const Interval c = carlet::asymptotic_constant();
  std::cout << "asymptotic constant in [" << c.to_string(10) << "]\n";
  const Rational target = parse_rational("-2817/1000");
  if (!c.definitely_le(Interval::point(target))) {
    std::cerr << "constant not certified <= -2.817\n";
    return kExitAssertion;
  }
  return kExitOk;
}

// Work estimate in element operations, in arbitrary precision so oversized
// requests are refused before any field tables are built.
void refuse_if_over_budget(int n, int k) {
  mpz_class num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (mpz_class{1} << (n - i)) - 1;
    den *= (mpz_class{1} << (k - i)) - 1;
  }
  const mpz_class work = (num / den) << n;  // 2^{n-k} * gauss * 2^k
  if (work > mpz_class(vlab::gf2n::kFlatsBudget)) {
    throw vlab::gf2n::BudgetError(
        "sum-freeness enumeration over n=" + std::to_string(n) + ", k=" +
        std::to_string(k) + " exceeds the element-operation budget");
  }
}

int cmd_sumfree(int n, int k, bool all_k) {
  if (all_k) {
    for (int kk = 1; kk <= n; ++kk) refuse_if_over_budget(n, kk);
  } else {
    refuse_if_over_budget(n, k);
  }
  const auto ctx = vlab::gf2n::FieldCtx::make(n);
  if (all_k) {
    for (int kk = 1; kk <= n; ++kk) {
      const auto r = vlab::gf2n::is_sum_free(ctx, kk);
      std::cout << vlab::gf2n::sum_free_json(ctx, kk, r) << "\n";
    }
    return kExitOk;
  }
  const auto r = vlab::gf2n::is_sum_free(ctx, k);
  std::cout << vlab::gf2n::sum_free_json(ctx, k, r) << "\n";
  return kExitOk;
}

int cmd_variety(int n, int k) {
  const auto ctx = vlab::gf2n::FieldCtx::make(n);
  const auto c = vlab::gf2n::variety_counts(ctx, k);
  std::cout << vlab::gf2n::variety_json(c) << "\n";
  return kExitOk;
}

int cmd_cross_check(int n, int k) {
  const auto ctx = vlab::gf2n::FieldCtx::make(n);
  const auto r = vlab::gf2n::cross_check(ctx, k);
  std::cout << vlab::gf2n::cross_check_json(r, n, k) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vlab: certified verification of planes-bound, hypersurface, "
               "and sum-freeness constants"};
  app.require_subcommand(1);

  // verify-planes
  unsigned long delta_min = 3, delta_max = 300000;
  std::string constant = "199/100";
  unsigned threads = default_threads();
  std::string checkpoint;
  std::string expect_failures;
  auto* vp = app.add_subcommand("verify-planes",
                                "Sweep the plane bound over a delta range");
  vp->add_option("--delta-min", delta_min, "Smallest delta (>= 3)");
  vp->add_option("--delta-max", delta_max, "Largest delta");
  vp->add_option("--constant", constant, "Threshold constant, p/q or decimal");
  vp->add_option("--threads", threads, "Worker threads");
  vp->add_option("--checkpoint", checkpoint, "Checkpoint file path");
  auto* ef = vp->add_option("--expect-failures", expect_failures,
                            "Expected failure set, e.g. 6-37 or empty");

  // appendix-table
  auto* at = app.add_subcommand("appendix-table",
                                "Exceptional-range table, delta in [6, 37]");

  // asymptotic
  unsigned long m = vlab::asymptotic::kRegimeStart;
  std::string a_constant = "199/100";
  unsigned long delta_start = vlab::asymptotic::kRegimeStart;
  auto* as = app.add_subcommand("asymptotic",
                                "Large-delta coefficients and tail certificate");
  as->add_option("--m", m, "Evaluation point for the leading coefficient");
  as->add_option("--constant", a_constant, "Tail threshold constant");
  as->add_option("--delta-start", delta_start, "Start of the certified tail");

  // derive-g
  std::string b_str = "199/100";
  unsigned long g_delta_min = 3;
  std::string g_str;
  auto* dg = app.add_subcommand("derive-g",
                                "Derive the point-count constant from a plane bound");
  dg->add_option("--b", b_str, "Plane-bound constant, p/q or decimal");
  dg->add_option("--delta-min", g_delta_min, "Smallest degree covered");
  dg->add_option("--g", g_str, "Claimed constant to compare against");

  // carlet-table
  unsigned k_min = 4, k_max = 30;
  std::string policy = "paper";
  std::string format = "csv";
  auto* ct = app.add_subcommand("carlet-table",
                                "Minimal n and J value per order k");
  ct->add_option("--k-min", k_min, "Smallest k");
  ct->add_option("--k-max", k_max, "Largest k");
  ct->add_option("--g-policy", policy, "paper or best")
      ->check(CLI::IsMember({"paper", "best"}));
  ct->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* ca = app.add_subcommand("carlet-asymptotic",
                                "Enclose the asymptotic root constant");

  // sumfree / variety / cross-check
  int n = 0, k = 0;
  bool all_k = false;
  auto* sf = app.add_subcommand("sumfree", "Brute-force sum-freeness of f_inv");
  sf->add_option("--n", n, "Field degree")->required()->check(CLI::Range(2, 64));
  auto* sfk = sf->add_option("--k", k, "Flat dimension");
  sf->add_flag("--all-k", all_k, "Test every k in [1, n]");

  auto* va = app.add_subcommand("variety", "Exhaustive variety counts");
  va->add_option("--n", n, "Field degree")->required()->check(CLI::Range(2, 16));
  va->add_option("--k", k, "Number of variables")->required();

  auto* cc = app.add_subcommand("cross-check",
                                "Variety counts vs. brute-force sum-freeness");
  cc->add_option("--n", n, "Field degree")->required()->check(CLI::Range(2, 16));
  cc->add_option("--k", k, "Order")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (vp->parsed()) {
      if (delta_min < 3 || delta_min > delta_max) {
        std::cerr << "require 3 <= --delta-min <= --delta-max\n";
        return kExitUsage;
      }
      if (threads < 1) {
        std::cerr << "--threads must be >= 1\n";
        return kExitUsage;
      }
      return cmd_verify_planes(delta_min, delta_max, constant, threads,
                               checkpoint, expect_failures, ef->count() > 0);
    }
    if (at->parsed()) return cmd_appendix_table();
    if (as->parsed()) return cmd_asymptotic(m, a_constant, delta_start);
    if (dg->parsed()) return cmd_derive_g(b_str, g_delta_min, g_str);
    if (ct->parsed()) return cmd_carlet_table(k_min, k_max, policy, format);
    if (ca->parsed()) return cmd_carlet_asymptotic();
    if (sf->parsed()) {
      if (!all_k && sfk->count() == 0) {
        std::cerr << "one of --k or --all-k is required\n";
        return kExitUsage;
      }
      if (!all_k && (k < 1 || k > n)) {
        std::cerr << "--k must be in [1, n]\n";
        return kExitUsage;
      }
      return cmd_sumfree(n, k, all_k);
    }
    if (va->parsed() || cc->parsed()) {
      if (k < 1 || k > 8) {
        std::cerr << "--k must be in [1, 8]\n";
        return kExitUsage;
      }
      return va->parsed() ? cmd_variety(n, k) : cmd_cross_check(n, k);
    }
  } catch (const vlab::planes::CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << "\n";
    return kExitCheckpoint;
  } catch (const vlab::gf2n::BudgetError& e) {
    std::cerr << "budget refusal: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "assertion failure: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitUsage;
}
