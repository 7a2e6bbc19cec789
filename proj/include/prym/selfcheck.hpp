#pragma once

/*
 * Invariant suite behind `prym selfcheck`. Each check reports the number of
 * cases it ran and the first counterexample on failure.
 */

#include "prym/exact_arith.hpp"
#include "prym/operator_engine.hpp"
#include "prym/pfaffian.hpp"
#include "prym/prym_bn.hpp"
#include "prym/series_ring.hpp"
#include "prym/verify/oracles.hpp"

#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace prym {

struct CheckOutcome {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  // first failure, empty on success
};

struct SelfcheckConfig {
  bool quick = false;  // g <= 4 and smaller random samples
  GCoeffFn g = g_coeff;
  unsigned threads = 1;
};

/// Problems with 2 <= g <= g_max, l <= 4, parts <= 2g - 2, |lambda| <= g - 1.
inline std::vector<PrymProblem> euler_suite(int g_min, int g_max) {
  std::vector<PrymProblem> out;
  for (int g = g_min; g <= g_max; ++g)
    for (const auto& lambda : strict_partitions(4, 2 * g - 2)) {
      int size = 0;
      for (int part : lambda) size += part;
      if (size <= g - 1) out.push_back(problem_from_partition(g, lambda));
    }
  return out;
}

/// `count` problems with |lambda| > g - 1, at most 10 per genus from g = 2 up.
inline std::vector<PrymProblem> empty_suite(std::size_t count) {
  std::vector<PrymProblem> out;
  for (int g = 2; out.size() < count; ++g) {
    std::size_t taken = 0;
    for (const auto& lambda : strict_partitions(4, 2 * g - 2)) {
      int size = 0;
      for (int part : lambda) size += part;
      if (size <= g - 1) continue;
      out.push_back(problem_from_partition(g, lambda));
      if (++taken == 10 || out.size() == count) break;
    }
  }
  return out;
}

inline std::string describe(std::span<const int> lambda) {
  std::ostringstream os;
  os << "lambda=(";
  for (std::size_t i = 0; i < lambda.size(); ++i) os << (i ? "," : "") << lambda[i];
  os << ")";
  return os.str();
}

inline std::string describe(const PrymProblem& p) { return "g=" + std::to_string(p.g) + " " + describe(p.lambda); }

namespace detail {

class CheckBuilder {
 public:
  explicit CheckBuilder(std::string name) { outcome_.name = std::move(name); }
  void expect(bool ok, const std::function<std::string()>& what) {
    ++outcome_.cases;
    if (!ok && outcome_.passed) {
      outcome_.passed = false;
      outcome_.detail = what();
    }
  }
  CheckOutcome done() { return std::move(outcome_); }

 private:
  CheckOutcome outcome_;
};

}  // namespace detail

inline std::vector<CheckOutcome> run_selfcheck(const SelfcheckConfig& config = {}) {
  using detail::CheckBuilder;
  std::vector<CheckOutcome> report;
  const int g_max = config.quick ? 4 : 7;
  const auto suite = euler_suite(2, g_max);
  std::mt19937_64 rng(20240611);

  {
    CheckBuilder c("binomial-pascal");
    for (int s = 1; s <= 30; ++s)
      for (int t = 1; t <= s; ++t)
        c.expect(binom_gen(s, t) == binom_gen(s - 1, t - 1) + binom_gen(s - 1, t),
                 [&] { return "s=" + std::to_string(s) + " t=" + std::to_string(t); });
    report.push_back(c.done());
  }
  {
    CheckBuilder c("alternating-binomial-identity");
    for (int b = 2; b <= 12; ++b)
      for (int a = 1; a < b; ++a) {
        auto [lhs, rhs] = verify::alternating_binomial_sides(a, b);
        c.expect(lhs == rhs, [&] { return "lambda_i=" + std::to_string(a) + " lambda_j=" + std::to_string(b); });
      }
    report.push_back(c.done());
  }
  {
    CheckBuilder c("abel-coefficient-series");
    for (long s = -8; s <= 8; ++s)
      for (int v = 0; v <= 12; ++v)
        c.expect(abel_coefficient(s, v) == verify::abel_by_series(s, v),
                 [&] { return "s=" + std::to_string(s) + " v=" + std::to_string(v); });
    report.push_back(c.done());
  }
  {
    CheckBuilder c("series-ring-laws");
    const int samples = config.quick ? 20 : 100;
    for (int k = 0; k < samples; ++k) {
      const int cap = k % 13;
      auto a = verify::random_theta_poly(cap, rng), b = verify::random_theta_poly(cap, rng),
           d = verify::random_theta_poly(cap, rng);
      c.expect((a * b) * d == a * (b * d) && a * b == b * a && a * (b + d) == a * b + a * d,
               [&] { return "cap=" + std::to_string(cap); });
    }
    report.push_back(c.done());
  }
  {
    CheckBuilder c("chern-vanishing");
    for (int j = 1; j <= 20; ++j)
      c.expect(verify::chern_vanishing_coefficient(j) == 0, [&] { return "j=" + std::to_string(j); });
    report.push_back(c.done());
  }
  {
    CheckBuilder matchings("pfaffian-matchings-vs-permutations");
    CheckBuilder squared("pfaffian-squared-determinant");
    CheckBuilder swapped("pfaffian-row-swap");
    const int per_size = config.quick ? 5 : 50;
    for (std::size_t n : {2u, 4u, 6u, 8u})
      for (int k = 0; k < per_size; ++k) {
        auto m = verify::random_skew(n, rng);
        Rational pf = pfaffian_matchings(m);
        if (n <= 6 || !config.quick)
          matchings.expect(pf == pfaffian_permutations(m), [&] { return "n=" + std::to_string(n); });
        if (n <= 6)
          squared.expect(pf * pf == verify::determinant(verify::to_dense(m)), [&] { return "n=" + std::to_string(n); });
        swapped.expect(pfaffian_matchings(m.swapped(0, n - 1)) == -pf, [&] { return "n=" + std::to_string(n); });
      }
    report.push_back(matchings.done());
    report.push_back(squared.done());
    report.push_back(swapped.done());
  }
  {
    CheckBuilder c("interaction-specialization");
    for (int cap = 0; cap <= 10; ++cap) {
      const auto symbolic = interaction_expansion_symbolic(cap);
      for (BetaMode mode : {BetaMode::zero, BetaMode::minus_one})
        c.expect(specialize(symbolic, beta_value(mode)) == interaction_expansion(cap, mode),
                 [&] { return "cap=" + std::to_string(cap) + " beta=" + std::string(to_string(mode)); });
      for (long s = -6; s <= 3; ++s) {
        const auto sym = prefactor_expansion_symbolic(s, cap);
        for (BetaMode mode : {BetaMode::zero, BetaMode::minus_one}) {
          const auto num = prefactor_expansion(s, cap, mode);
          bool same = true;
          for (int v = 0; v <= cap; ++v)
            same = same && sym[static_cast<std::size_t>(v)].evaluate(beta_value(mode)) == num[static_cast<std::size_t>(v)];
          c.expect(same, [&] { return "prefactor s=" + std::to_string(s) + " cap=" + std::to_string(cap); });
        }
      }
    }
    report.push_back(c.done());
  }
  {
    CheckBuilder c("interaction-reconstruction");
    for (int cap = 0; cap <= 10; ++cap)
      for (const auto& [lm, value] : verify::interaction_times_denominator(interaction_expansion(cap, BetaMode::minus_one), cap)) {
        const auto [l, m] = lm;
        Rational expected = (l == 0 && m == 0) ? 1 : (l == 1 && m == 0 ? -1 : 0);
        c.expect(value == expected,
                 [&] { return "cap=" + std::to_string(cap) + " l=" + std::to_string(l) + " m=" + std::to_string(m); });
      }
    report.push_back(c.done());
  }

  {
    CheckBuilder equivalence("oracle-equivalence");
    CheckBuilder integral("integrality");
    CheckBuilder zero_dim("zero-dimensional-degree");
    CheckBuilder leading("k-class-leading-term");
    CheckBuilder connective("connective-specialization");
    CheckBuilder antisym("g-table-antisymmetry");
    EulerOptions options;
    options.g = config.g;
    options.threads = config.threads;
    for (const auto& p : suite) {
      const Rational theorem = euler_theorem(p, options);
      const Rational oracle = euler_oracle(p);
      equivalence.expect(theorem == oracle, [&] {
        return describe(p) + ": theorem " + to_string(theorem) + " vs oracle " + to_string(oracle);
      });
      integral.expect(is_integer(theorem), [&] { return describe(p) + ": chi = " + to_string(theorem); });
      const Rational gamma = chow_class_closed(p.lambda);
      if (p.weight == p.dim)
        zero_dim.expect(theorem == gamma * pow2(p.dim) * Rational(factorial(p.dim)), [&] { return describe(p); });
      const ThetaPoly ch = ch_k_class(p);
      leading.expect(ch.coeff(p.weight) == gamma, [&] { return describe(p); });
      if (!config.quick || p.g <= 3) {
        const ThetaBetaPoly sym = ck_class(p, BetaMode::symbolic);
        connective.expect(specialize(sym, Rational(-1)) == ch &&
                              specialize(sym, Rational(0)) == ThetaPoly::monomial(p.dim, p.weight, gamma),
                          [&] { return describe(p); });
      }
      std::vector<int> v(p.lambda.size(), 1);
      const int l = p.length();
      for (int m = 0; m <= 2; ++m)
        for (int i = 0; i <= l; ++i)
          for (int j = 0; j <= l; ++j)
            antisym.expect(config.g(m, j, i, p.lambda, v) == -config.g(m, i, j, p.lambda, v),
                           [&] { return describe(p) + " m=" + std::to_string(m); });
    }
    report.push_back(equivalence.done());
    report.push_back(integral.done());
    report.push_back(zero_dim.done());
    report.push_back(leading.done());
    report.push_back(connective.done());
    report.push_back(antisym.done());
  }
  {
    CheckBuilder c("pfaffian-vs-product");
    const int max_part = config.quick ? 6 : 9;
    for (const auto& lambda : strict_partitions(5, max_part))
      c.expect(chow_class_pfaffian(lambda) == chow_class_closed(lambda),
               [&] { return describe(lambda); });
    report.push_back(c.done());
  }
  {
    CheckBuilder c("emptiness");
    EulerOptions options;
    options.g = config.g;
    options.threads = config.threads;
    for (const auto& p : empty_suite(config.quick ? 10 : 50))
      c.expect(euler_theorem(p, options) == 0 && euler_oracle(p) == 0 && ch_k_class(p).is_zero(),
               [&] { return describe(p); });
    report.push_back(c.done());
  }
  {
    CheckBuilder c("classical-branches");
    for (int r = 0; r <= 6; ++r) {
      auto [a, b] = classical_coefficient_branches(r);
      std::vector<int> staircase;
      for (int i = r; i >= 1; --i) staircase.push_back(i);
      c.expect(a == b && a == chow_class_closed(staircase), [&] { return "r=" + std::to_string(r); });
    }
    report.push_back(c.done());
  }
  return report;
}

}  // namespace prym
