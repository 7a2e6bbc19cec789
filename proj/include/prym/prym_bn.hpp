#pragma once

/*
 * Pointed Brill-Noether loci on Prym varieties.
 *
 * A problem is a genus g and a vanishing sequence 0 <= a_0 < ... < a_r <=
 * 2g - 2. Its strict partition lambda (the nonzero a_i, decreasing) has
 * length l and size |lambda|, the expected codimension in a Prym variety of
 * dimension g - 1.
 *
 * Classes are expanded in theta' = 2 xi, truncated at degree g - 1, where
 * integration is int xi^{g-1} = (g - 1)!. The Euler characteristic is
 * computed two ways:
 *
 *   euler_oracle   integrate the Chern character ch([O_V]), itself the
 *                  Pfaffian (matching expansion) of the beta = -1 matrix
 *                  with theta'-series entries;
 *   euler_theorem  the closed double sum over shift vectors v, permutations
 *                  sigma, and compositions f, with g-coefficients; the
 *                  alternating u-sums enter as abel_coefficient and only
 *                  terms of total degree g - 1 are kept.
 */

#include "prym/exact_arith.hpp"
#include "prym/operator_engine.hpp"
#include "prym/parallel.hpp"
#include "prym/pfaffian.hpp"
#include "prym/series_ring.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace prym {

/// Input rejected by validation; what() names the violated bound.
struct ProblemError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PrymProblem {
  int g = 2;
  int r = 0;
  std::vector<int> a;       // vanishing sequence, increasing
  std::vector<int> lambda;  // nonzero parts, strictly decreasing
  std::vector<long> s;      // s_i = l - i - lambda_i + 1, i = 1..l
  int dim = 1;              // g - 1
  int weight = 0;           // |lambda|
  bool expected_empty = false;

  int length() const { return static_cast<int>(lambda.size()); }
  /// "+" for odd r, "-" for even r.
  std::string parity() const { return r % 2 == 1 ? "+" : "-"; }

  friend bool operator==(const PrymProblem&, const PrymProblem&) = default;
};

inline PrymProblem build_problem(int g, int r, std::vector<int> a) {
  if (g < 2) throw ProblemError("genus must be at least 2 (g = " + std::to_string(g) + ")");
  if (r < 0) throw ProblemError("r must be nonnegative (r = " + std::to_string(r) + ")");
  if (a.size() != static_cast<std::size_t>(r) + 1)
    throw ProblemError("vanishing sequence must have r+1 = " + std::to_string(r + 1) + " entries (got " +
                       std::to_string(a.size()) + ")");
  if (a.front() < 0) throw ProblemError("a_0 must be nonnegative (a_0 = " + std::to_string(a.front()) + ")");
  for (std::size_t i = 0; i + 1 < a.size(); ++i)
    if (a[i] >= a[i + 1])
      throw ProblemError("vanishing sequence must be strictly increasing (a_" + std::to_string(i) + " = " +
                         std::to_string(a[i]) + ", a_" + std::to_string(i + 1) + " = " + std::to_string(a[i + 1]) + ")");
  if (a.back() > 2 * g - 2)
    throw ProblemError("a_r exceeds 2g-2 (a_r = " + std::to_string(a.back()) + ", 2g-2 = " + std::to_string(2 * g - 2) + ")");

  PrymProblem p;
  p.g = g;
  p.r = r;
  p.a = std::move(a);
  for (auto it = p.a.rbegin(); it != p.a.rend(); ++it)
    if (*it != 0) p.lambda.push_back(*it);
  const long l = static_cast<long>(p.lambda.size());
  for (long i = 1; i <= l; ++i) p.s.push_back(l - i - p.lambda[static_cast<std::size_t>(i - 1)] + 1);
  p.dim = g - 1;
  p.weight = std::accumulate(p.lambda.begin(), p.lambda.end(), 0);
  p.expected_empty = p.weight > p.dim;
  return p;
}

/// The problem whose vanishing sequence is lambda reversed; (0) when lambda
/// is empty.
inline PrymProblem problem_from_partition(int g, std::span<const int> lambda) {
  std::vector<int> a(lambda.rbegin(), lambda.rend());
  if (a.empty()) a.push_back(0);
  const int r = static_cast<int>(a.size()) - 1;
  return build_problem(g, r, std::move(a));
}

inline void require_strict(std::span<const int> lambda) {
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] <= 0) throw std::invalid_argument("strict partition parts must be positive");
    if (i > 0 && lambda[i - 1] <= lambda[i]) throw std::invalid_argument("strict partition must be strictly decreasing");
  }
}

/// Strict partitions with at most max_length parts, each part <= max_part,
/// in a fixed order (by length, then lexicographically).
inline std::vector<std::vector<int>> strict_partitions(int max_length, int max_part) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int, int)> extend = [&](int remaining, int bound) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int part = bound; part >= remaining; --part) {
      current.push_back(part);
      extend(remaining - 1, part - 1);
      current.pop_back();
    }
  };
  for (int len = 0; len <= max_length; ++len) extend(len, max_part);
  return out;
}

// --- cohomology class (beta = 0) ---------------------------------------------

/// gamma with [V] = gamma (2 xi)^{|lambda|}:
/// 2^{-l} prod 1/lambda_i! prod_{i<j} (lambda_i - lambda_j)/(lambda_i + lambda_j).
inline Rational chow_class_closed(std::span<const int> lambda) {
  require_strict(lambda);
  Rational gamma = pow2(-static_cast<long>(lambda.size()));
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    gamma /= Rational(factorial(lambda[i]));
    for (std::size_t j = i + 1; j < lambda.size(); ++j)
      gamma *= make_rational(lambda[i] - lambda[j], lambda[i] + lambda[j]);
  }
  return gamma;
}

/// Same gamma as the Pfaffian of the degree-|lambda| matrix
///   m_ij = 1/4 * (C(L, lambda_i) + 2 sum_{u>0} (-1)^u C(L, lambda_i + u)) / L!,
///   L = lambda_i + lambda_j,
/// augmented for odd l by m_0j = 1/2 * 1/lambda_j!.
inline Rational chow_class_pfaffian(std::span<const int> lambda) {
  require_strict(lambda);
  const std::size_t l = lambda.size();
  SkewMatrix<Rational> m(l, Rational(0));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j) {
      const int li = lambda[i], lj = lambda[j];
      Integer alternating = 0;
      for (int u = 1; u <= lj; ++u) {
        Integer b = binom_gen(li + lj, li + u);
        if (u % 2 == 1)
          alternating -= b;
        else
          alternating += b;
      }
      Integer bracket = binom_gen(li + lj, li) + 2 * alternating;
      m.set(i, j, make_rational(bracket, 4 * factorial(li + lj)));
    }
  if (l % 2 == 0) return pfaffian_matchings(m);
  std::vector<Rational> row0;
  for (int part : lambda) row0.push_back(make_rational(1, 2 * factorial(part)));
  return pfaffian_matchings(augment_odd(m, std::span<const Rational>(row0)));
}

// --- K-theory classes ---------------------------------------------------------

/// Skew matrix of theta'-series entries for the class Pfaffian, augmented
/// when l is odd. C = Rational for numeric beta, BetaPoly for symbolic.
template <class C>
SkewMatrix<Truncated<C>> class_matrix(const PrymProblem& p, BetaMode mode) {
  using Series = Truncated<C>;
  const int cap = p.dim;
  const std::size_t l = p.lambda.size();
  const auto& op = Expansions<C>::interaction(cap, mode);
  std::vector<const std::vector<C>*> pre;
  for (long s : p.s) pre.push_back(&Expansions<C>::prefactors(s, cap, mode));

  SkewMatrix<Series> m(l, Series(cap));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j)
      m.set(i, j, apply_pair_operator<C>(op, p.lambda[i], p.lambda[j], *pre[i], *pre[j], cap));
  if (l % 2 == 0) return m;
  std::vector<Series> row0;
  for (std::size_t j = 0; j < l; ++j) row0.push_back(apply_single_operator<C>(p.lambda[j], *pre[j], cap));
  return augment_odd(m, std::span<const Series>(row0));
}

/// ch([O_V]) as a theta'-polynomial truncated at degree g - 1.
inline ThetaPoly ch_k_class(const PrymProblem& p) {
  return pfaffian_matchings(class_matrix<Rational>(p, BetaMode::minus_one));
}

/// The connective K-theory class, expanded with symbolic beta and then
/// specialized when mode is numeric.
inline ThetaBetaPoly ck_class(const PrymProblem& p, BetaMode mode) {
  ThetaBetaPoly symbolic = pfaffian_matchings(class_matrix<BetaPoly>(p, BetaMode::symbolic));
  if (mode == BetaMode::symbolic) return symbolic;
  return lift(specialize(symbolic, beta_value(mode)));
}

/// chi(O_V) = int ch([O_V]) with theta' = 2 xi and int xi^{g-1} = (g-1)!.
inline Rational euler_oracle(const PrymProblem& p) {
  Rational top = ch_k_class(p).coeff(p.dim);
  return top * pow2(p.dim) * Rational(factorial(p.dim));
}

// --- Euler characteristic by the closed sum ----------------------------------

/// g_m^{i,j} for the shift vector v. Index 0 is the augmentation index of an
/// odd-length partition: g_0^{0,j} = 1/(lambda_j + v_j)!, g_{m>0}^{0,j} = 0.
/// Factorials of negative arguments are read as zero (d_{<0} = 0).
inline Rational g_coeff(int m, int i, int j, std::span<const int> lambda, std::span<const int> v) {
  const int l = static_cast<int>(lambda.size());
  if (v.size() != lambda.size()) throw std::invalid_argument("g_coeff: shift vector length differs from partition length");
  if (m < 0) throw std::invalid_argument("g_coeff: negative degree");
  if (i < 0 || j < 0 || i > l || j > l) throw std::out_of_range("g_coeff: index out of range");
  if (i == j) return 0;
  if (i > j) return -g_coeff(m, j, i, lambda, v);
  const int b = lambda[static_cast<std::size_t>(j - 1)] + v[static_cast<std::size_t>(j - 1)];
  if (i == 0) return m == 0 ? make_rational(1, factorial(b)) : Rational(0);
  const int a = lambda[static_cast<std::size_t>(i - 1)] + v[static_cast<std::size_t>(i - 1)];

  Rational sum = make_rational(1, factorial(a + m) * factorial(b));
  for (int ell = 1; ell <= b; ++ell) {
    // at m = 0 the weight is C(ell-1, 0) + C(ell, 0) = 2
    Integer weight = binom_gen(ell + m - 1, m) + binom_gen(ell + m, m);
    Rational term = make_rational(weight, factorial(a + ell + m) * factorial(b - ell));
    if (ell % 2 == 1)
      sum -= term;
    else
      sum += term;
  }
  return m % 2 == 1 ? Rational(-sum) : sum;
}

using GCoeffFn = std::function<Rational(int m, int i, int j, std::span<const int> lambda, std::span<const int> v)>;

/// g_m^{i,j} for 0 <= m <= max_m and all index pairs of one (lambda, v).
class GTable {
 public:
  GTable(std::span<const int> lambda, std::span<const int> v, int max_m, const GCoeffFn& fn = g_coeff)
      : size_(static_cast<int>(lambda.size()) + 1), max_m_(max_m),
        values_(static_cast<std::size_t>(size_ * size_ * (max_m + 1))) {
    for (int m = 0; m <= max_m; ++m)
      for (int i = 0; i < size_; ++i)
        for (int j = 0; j < size_; ++j) values_[slot(m, i, j)] = fn(m, i, j, lambda, v);
  }

  const Rational& at(int m, int i, int j) const {
    if (m < 0 || m > max_m_ || i < 0 || j < 0 || i >= size_ || j >= size_)
      throw std::out_of_range("GTable index out of range");
    return values_[slot(m, i, j)];
  }
  int max_m() const { return max_m_; }
  int indices() const { return size_; }

 private:
  std::size_t slot(int m, int i, int j) const { return static_cast<std::size_t>((m * size_ + i) * size_ + j); }

  int size_;
  int max_m_;
  std::vector<Rational> values_;
};

/// All f assigning nonnegative degrees to the n_pairs slots
/// (sigma[2t], sigma[2t+1]) with total k. Slots touching index 0 are pinned
/// to 0.
inline std::vector<std::vector<int>> enumerate_f(std::span<const int> sigma, int k, int n_pairs) {
  if (k < 0) throw std::invalid_argument("enumerate_f: negative total");
  if (n_pairs < 0 || sigma.size() < 2 * static_cast<std::size_t>(n_pairs))
    throw std::invalid_argument("enumerate_f: permutation too short for the number of pairs");
  std::vector<char> pinned(static_cast<std::size_t>(n_pairs));
  for (int t = 0; t < n_pairs; ++t)
    pinned[static_cast<std::size_t>(t)] = sigma[2 * static_cast<std::size_t>(t)] == 0 || sigma[2 * static_cast<std::size_t>(t) + 1] == 0;

  std::vector<std::vector<int>> out;
  std::vector<int> f(static_cast<std::size_t>(n_pairs), 0);
  std::function<void(int, int)> fill = [&](int slot, int remaining) {
    if (slot == n_pairs) {
      if (remaining == 0) out.push_back(f);
      return;
    }
    if (pinned[static_cast<std::size_t>(slot)]) {
      f[static_cast<std::size_t>(slot)] = 0;
      fill(slot + 1, remaining);
      return;
    }
    for (int x = remaining; x >= 0; --x) {
      f[static_cast<std::size_t>(slot)] = x;
      fill(slot + 1, remaining - x);
    }
    f[static_cast<std::size_t>(slot)] = 0;
  };
  fill(0, k);
  return out;
}

struct EulerOptions {
  GCoeffFn g = g_coeff;
  unsigned threads = 1;
};

namespace detail {

/// Nonnegative integer vectors of the given length with sum <= budget.
inline std::vector<std::vector<int>> shift_vectors(std::size_t length, int budget) {
  std::vector<std::vector<int>> out;
  if (budget < 0) return out;
  std::vector<int> v(length, 0);
  std::function<void(std::size_t, int)> fill = [&](std::size_t pos, int remaining) {
    if (pos == length) {
      out.push_back(v);
      return;
    }
    for (int x = 0; x <= remaining; ++x) {
      v[pos] = x;
      fill(pos + 1, remaining - x);
    }
    v[pos] = 0;
  };
  fill(0, budget);
  return out;
}

}  // namespace detail

/// chi(O_V) from the closed sum over (v, sigma, k, f).
inline Rational euler_theorem(const PrymProblem& p, const EulerOptions& options = {}) {
  const int l = p.length();
  const int budget = p.dim - p.weight;
  if (budget < 0) return 0;

  std::vector<int> labels;
  for (int i = (l % 2 == 0 ? 1 : 0); i <= l; ++i) labels.push_back(i);
  const int pairs = static_cast<int>(labels.size()) / 2;

  std::vector<std::pair<std::vector<int>, int>> perms;  // (sigma, sgn sigma)
  {
    std::vector<int> sigma = labels;
    std::vector<std::size_t> positions(sigma.size());
    do {
      for (std::size_t t = 0; t < sigma.size(); ++t) positions[t] = static_cast<std::size_t>(sigma[t] - labels.front());
      perms.emplace_back(sigma, permutation_sign(positions));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }

  const auto shifts = detail::shift_vectors(p.lambda.size(), budget);
  auto term_for = [&](std::size_t index) -> Rational {
    const auto& v = shifts[index];
    Rational weight = 1;
    for (std::size_t i = 0; i < v.size() && weight != 0; ++i) weight *= abel_coefficient(p.s[i], v[i]);
    if (weight == 0) return 0;
    const int k = budget - std::accumulate(v.begin(), v.end(), 0);
    GTable table(p.lambda, v, k, options.g);
    Rational inner = 0;
    for (const auto& [sigma, sign] : perms) {
      for (const auto& f : enumerate_f(sigma, k, pairs)) {
        Rational prod = 1;
        for (int t = 0; t < pairs && prod != 0; ++t)
          prod *= table.at(f[static_cast<std::size_t>(t)], sigma[2 * static_cast<std::size_t>(t)],
                           sigma[2 * static_cast<std::size_t>(t) + 1]);
        if (sign > 0)
          inner += prod;
        else
          inner -= prod;
      }
    }
    return weight * inner;
  };

  const auto terms = parallel_map<Rational>(shifts.size(), options.threads, term_for);
  Rational total = 0;
  for (const auto& t : terms) total += t;

  // h! / (2^{pairs - h} pairs!) with h = g - 1
  const int h = p.dim;
  Rational scale = Rational(factorial(h)) * pow2(h - pairs) / Rational(factorial(pairs));
  return total * scale;
}

// --- classical loci ------------------------------------------------------------

/// gamma for a = (0, ..., r) evaluated through both forms: lambda = (r, ..., 1)
/// and lambda = (r, ..., 1, 0) with the zero part kept in the products.
inline std::pair<Rational, Rational> classical_coefficient_branches(int r) {
  if (r < 0) throw std::invalid_argument("classical_coefficient: r must be nonnegative");
  auto evaluate = [r](int lowest) {
    Rational c = pow2(-r);
    for (int i = lowest; i <= r; ++i) {
      c /= Rational(factorial(i));
      for (int j = lowest; j < i; ++j) c *= make_rational(i - j, i + j);
    }
    return c;
  };
  return {evaluate(1), evaluate(0)};
}

inline Rational classical_coefficient(int r) {
  auto [a, b] = classical_coefficient_branches(r);
  if (a != b) throw std::logic_error("classical_coefficient: branches disagree for r = " + std::to_string(r));
  return a;
}

// --- results -----------------------------------------------------------------------

enum class ClassKind { cohomology, chern_character_K, connective };

inline std::string to_string(ClassKind k) {
  switch (k) {
    case ClassKind::cohomology: return "cohomology";
    case ClassKind::chern_character_K: return "chern_character_K";
    case ClassKind::connective: return "connective";
  }
  return "?";
}

struct ClassResult {
  PrymProblem problem;
  ClassKind kind = ClassKind::cohomology;
  BetaMode beta = BetaMode::zero;
  std::optional<Rational> gamma;  // cohomology only: [V] = gamma (2 xi)^exponent
  std::optional<int> exponent;
  std::variant<ThetaPoly, ThetaBetaPoly> poly;  // in theta'
  std::optional<Rational> chi;
  std::vector<std::string> convention_flags;

  friend bool operator==(const ClassResult&, const ClassResult&) = default;
};

inline std::vector<std::string> convention_flags_for(const PrymProblem& p, BetaMode mode) {
  std::vector<std::string> flags{"unit_delta"};
  if (p.length() % 2 == 1) flags.emplace_back("augmented_odd_length");
  if (mode == BetaMode::symbolic) {
    flags.emplace_back("engine_convention");
    flags.emplace_back("experimental_symbolic_beta");
  }
  return flags;
}

inline ClassResult compute_class(const PrymProblem& p, BetaMode mode) {
  ClassResult result;
  result.problem = p;
  result.beta = mode;
  result.convention_flags = convention_flags_for(p, mode);
  switch (mode) {
    case BetaMode::zero:
      result.kind = ClassKind::cohomology;
      result.gamma = chow_class_pfaffian(p.lambda);
      result.exponent = p.weight;
      result.poly = specialize(ck_class(p, BetaMode::zero), Rational(0));
      break;
    case BetaMode::minus_one:
      result.kind = ClassKind::chern_character_K;
      result.poly = ch_k_class(p);
      break;
    case BetaMode::symbolic:
      result.kind = ClassKind::connective;
      result.poly = ck_class(p, BetaMode::symbolic);
      break;
  }
  return result;
}

/// Thrown when the two Euler characteristic routes disagree.
struct RouteMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// chi through euler_theorem; with verify, also through euler_oracle, and a
/// disagreement throws RouteMismatch.
inline ClassResult compute_chi(const PrymProblem& p, bool verify, unsigned threads = 1) {
  ClassResult result = compute_class(p, BetaMode::minus_one);
  EulerOptions options;
  options.threads = threads;
  Rational chi = euler_theorem(p, options);
  if (verify) {
    Rational oracle = euler_oracle(p);
    if (oracle != chi)
      throw RouteMismatch("Euler characteristic routes disagree: theorem " + to_string(chi) + ", oracle " +
                          to_string(oracle));
  }
  result.chi = chi;
  return result;
}

}  // namespace prym
