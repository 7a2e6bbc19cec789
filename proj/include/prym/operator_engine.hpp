#pragma once

/*
 * Raising-operator calculus for the pairwise Pfaffian entries.
 *
 * An entry is (prefactor in T_i) * (prefactor in T_j) * (interaction in
 * R_ij = T_i / T_j and T_i) applied to d_{lambda_i}(i) d_{lambda_j}(j), with
 *
 *   prefactor(T)    = (1 - beta T)^s / (2 - beta T)
 *   interaction     = (1 - R) / (1 + R - beta T_i)
 *
 * and d_k = theta'^k / k!, d_{k<0} = 0. Only T (not a sign-twisted T) and
 * unit delta factors are used; this reproduces the beta = 0 and beta = -1
 * specializations exactly. For other beta the output is the engine's own
 * convention.
 *
 * Two independent routes exist for each expansion: closed-form coefficients
 * at a numeric beta, and formal geometric-series expansion with symbolic
 * beta.
 */

#include "prym/exact_arith.hpp"
#include "prym/series_ring.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

namespace prym {

enum class BetaMode { symbolic, zero, minus_one };

inline Rational beta_value(BetaMode mode) {
  switch (mode) {
    case BetaMode::zero: return 0;
    case BetaMode::minus_one: return -1;
    case BetaMode::symbolic: break;
  }
  throw std::invalid_argument("symbolic beta has no numeric value");
}

inline std::string_view to_string(BetaMode mode) {
  switch (mode) {
    case BetaMode::zero: return "0";
    case BetaMode::minus_one: return "-1";
    case BetaMode::symbolic: return "symbolic";
  }
  return "?";
}

inline BetaMode parse_beta_mode(std::string_view text) {
  if (text == "0") return BetaMode::zero;
  if (text == "-1") return BetaMode::minus_one;
  if (text == "symbolic") return BetaMode::symbolic;
  throw std::invalid_argument("beta must be one of 0, -1, symbolic (got '" + std::string(text) + "')");
}

/// coeff * T_i^raise * T_j^{-lower}; raise counts every raise of index i
/// (lower of them come from R_ij = T_i / T_j), so raise >= lower >= 0.
template <class C>
struct ShiftMonomial {
  C coeff;
  int raise = 0;
  int lower = 0;

  friend bool operator==(const ShiftMonomial&, const ShiftMonomial&) = default;
};

template <class C>
struct ShiftOperatorPoly {
  std::vector<ShiftMonomial<C>> terms;  // distinct (raise, lower)

  C coeff(int raise, int lower) const {
    for (const auto& t : terms)
      if (t.raise == raise && t.lower == lower) return t.coeff;
    return C{};
  }
  friend bool operator==(const ShiftOperatorPoly&, const ShiftOperatorPoly&) = default;
};

// --- prefactor (1 - beta T)^s / (2 - beta T) --------------------------------

/// Coefficients of T^0..T^cap at beta = 0 or -1. At -1 these are the
/// abel_coefficient values; at 0 only the constant 1/2 survives.
inline std::vector<Rational> prefactor_expansion(long s, int cap, BetaMode mode) {
  if (cap < 0) throw std::invalid_argument("prefactor_expansion: negative cap");
  std::vector<Rational> out(static_cast<std::size_t>(cap) + 1);
  switch (mode) {
    case BetaMode::zero:
      out[0] = make_rational(1, 2);
      break;
    case BetaMode::minus_one:
      for (int v = 0; v <= cap; ++v) out[static_cast<std::size_t>(v)] = abel_coefficient(s, v);
      break;
    case BetaMode::symbolic:
      throw std::invalid_argument("prefactor_expansion: use prefactor_expansion_symbolic for symbolic beta");
  }
  return out;
}

/// Same series with beta kept symbolic: (1 - beta T)^s by the generalized
/// binomial series times 1/2 * sum_k (beta T / 2)^k.
inline std::vector<BetaPoly> prefactor_expansion_symbolic(long s, int cap) {
  if (cap < 0) throw std::invalid_argument("prefactor_expansion: negative cap");
  std::vector<BetaPoly> power(static_cast<std::size_t>(cap) + 1), geometric(power.size());
  for (int t = 0; t <= cap; ++t) {
    Rational c = Rational(binom_gen(s, t));
    if (t % 2 == 1) c = -c;
    power[static_cast<std::size_t>(t)] = BetaPoly::monomial(t, c);
    geometric[static_cast<std::size_t>(t)] = BetaPoly::monomial(t, pow2(-(t + 1)));
  }
  std::vector<BetaPoly> out(power.size());
  for (int a = 0; a <= cap; ++a)
    for (int b = 0; a + b <= cap; ++b)
      out[static_cast<std::size_t>(a + b)] += power[static_cast<std::size_t>(a)] * geometric[static_cast<std::size_t>(b)];
  return out;
}

// --- interaction (1 - R) / (1 + R - beta T_i) ---------------------------------

/// Closed form at beta = 0 or -1: the coefficient of R^l T_i^m is
/// beta^m for l = 0 and (-1)^l beta^m (C(l+m-1, m) + C(l+m, m)) for l > 0.
/// Terms with l + m <= cap.
inline ShiftOperatorPoly<Rational> interaction_expansion(int cap, BetaMode mode) {
  if (cap < 0) throw std::invalid_argument("interaction_expansion: negative cap");
  const Rational beta = beta_value(mode);
  ShiftOperatorPoly<Rational> op;
  for (int l = 0; l <= cap; ++l) {
    Rational beta_pow = 1;
    for (int m = 0; l + m <= cap; ++m, beta_pow *= beta) {
      if (beta_pow == 0) break;
      Rational c = l == 0 ? Rational(1)
                          : Rational(binom_gen(l + m - 1, m) + binom_gen(l + m, m));
      if (l % 2 == 1) c = -c;
      c *= beta_pow;
      if (c != 0) op.terms.push_back({c, l + m, l});
    }
  }
  return op;
}

/// Symbolic beta, by the formal geometric series sum_n (-(R - beta T))^n
/// followed by multiplication with (1 - R).
inline ShiftOperatorPoly<BetaPoly> interaction_expansion_symbolic(int cap) {
  if (cap < 0) throw std::invalid_argument("interaction_expansion: negative cap");
  using Key = std::pair<int, int>;  // (power of R, power of T)
  using Bivariate = std::map<Key, BetaPoly>;
  const Bivariate neg_x = {{{1, 0}, BetaPoly(-1)}, {{0, 1}, BetaPoly::beta()}};
  Bivariate power = {{{0, 0}, BetaPoly(1)}};
  Bivariate inverse = power;
  for (int n = 1; n <= cap; ++n) {
    Bivariate next;
    for (const auto& [k1, c1] : power)
      for (const auto& [k2, c2] : neg_x) {
        Key k{k1.first + k2.first, k1.second + k2.second};
        if (k.first + k.second <= cap) next[k] += c1 * c2;
      }
    power = std::move(next);
    for (const auto& [k, c] : power) inverse[k] += c;
  }
  ShiftOperatorPoly<BetaPoly> op;
  for (int l = 0; l <= cap; ++l)
    for (int m = 0; l + m <= cap; ++m) {
      BetaPoly c;
      if (auto it = inverse.find({l, m}); it != inverse.end()) c += it->second;
      if (l > 0)
        if (auto it = inverse.find({l - 1, m}); it != inverse.end()) c -= it->second;
      if (!c.is_zero()) op.terms.push_back({c, l + m, l});
    }
  return op;
}

template <class C>
ShiftOperatorPoly<Rational> specialize(const ShiftOperatorPoly<C>& op, const Rational& beta) {
  ShiftOperatorPoly<Rational> out;
  for (const auto& t : op.terms) {
    Rational c = specialize(t.coeff, beta);
    if (c != 0) out.terms.push_back({c, t.raise, t.lower});
  }
  return out;
}

// --- application to d-classes ----------------------------------------------

/// sum over (v_i, v_j, term) of pre_i[v_i] pre_j[v_j] coeff
///   * d_{lambda_i + v_i + raise} d_{lambda_j + v_j - lower},
/// truncated at cap. A negative d-index contributes zero.
template <class C>
Truncated<C> apply_pair_operator(const ShiftOperatorPoly<C>& op, int lambda_i, int lambda_j,
                                 std::type_identity_t<std::span<const C>> pre_i,
                                 std::type_identity_t<std::span<const C>> pre_j, int cap) {
  if (lambda_i < 0 || lambda_j < 0) throw std::invalid_argument("apply_pair_operator: negative base index");
  Truncated<C> out(cap);
  if (lambda_i + lambda_j > cap) return out;
  const auto inv = inverse_factorials(cap);
  const int vi_max = std::min<int>(cap - lambda_i - lambda_j, static_cast<int>(pre_i.size()) - 1);
  for (int vi = 0; vi <= vi_max; ++vi) {
    const C& pi = pre_i[static_cast<std::size_t>(vi)];
    if (pi == C{}) continue;
    const int vj_max = std::min<int>(cap - lambda_i - lambda_j - vi, static_cast<int>(pre_j.size()) - 1);
    for (int vj = 0; vj <= vj_max; ++vj) {
      const C& pj = pre_j[static_cast<std::size_t>(vj)];
      if (pj == C{}) continue;
      C weight = pi * pj;
      for (const auto& t : op.terms) {
        const int a = lambda_i + vi + t.raise;
        const int b = lambda_j + vj - t.lower;
        if (b < 0 || a + b > cap) continue;
        C c = weight * t.coeff;
        c *= inv[static_cast<std::size_t>(a)] * inv[static_cast<std::size_t>(b)];
        out.add_to(a + b, c);
      }
    }
  }
  return out;
}

/// Boundary entry of an augmented matrix: sum_v pre[v] d_{lambda + v}.
template <class C>
Truncated<C> apply_single_operator(int lambda, std::type_identity_t<std::span<const C>> pre, int cap) {
  if (lambda < 0) throw std::invalid_argument("apply_single_operator: negative base index");
  Truncated<C> out(cap);
  const auto inv = inverse_factorials(cap);
  for (int v = 0; lambda + v <= cap && v < static_cast<int>(pre.size()); ++v) {
    C c = pre[static_cast<std::size_t>(v)];
    c *= inv[static_cast<std::size_t>(lambda + v)];
    out.add_to(lambda + v, c);
  }
  return out;
}

// --- memo tables -------------------------------------------------------------

/// Read-mostly cache. Values are computed outside the lock; a racing
/// duplicate computation yields an identical value and is discarded.
template <class Key, class Value>
class MemoTable {
 public:
  template <class Fn>
  const Value& get(const Key& key, Fn&& compute) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(key); it != table_.end()) return it->second;
    }
    Value value = compute();
    std::unique_lock lock(mutex_);
    return table_.try_emplace(key, std::move(value)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<Key, Value> table_;  // node-based: references stay valid
};

/// Cached expansions, by coefficient type: Rational for numeric beta,
/// BetaPoly for symbolic beta.
template <class C>
struct Expansions;

template <>
struct Expansions<Rational> {
  static const std::vector<Rational>& prefactors(long s, int cap, BetaMode mode) {
    static MemoTable<std::tuple<long, int, int>, std::vector<Rational>> table;
    return table.get({s, cap, static_cast<int>(mode)}, [&] { return prefactor_expansion(s, cap, mode); });
  }
  static const ShiftOperatorPoly<Rational>& interaction(int cap, BetaMode mode) {
    static MemoTable<std::pair<int, int>, ShiftOperatorPoly<Rational>> table;
    return table.get({cap, static_cast<int>(mode)}, [&] { return interaction_expansion(cap, mode); });
  }
};

template <>
struct Expansions<BetaPoly> {
  static const std::vector<BetaPoly>& prefactors(long s, int cap, BetaMode) {
    static MemoTable<std::pair<long, int>, std::vector<BetaPoly>> table;
    return table.get({s, cap}, [&] { return prefactor_expansion_symbolic(s, cap); });
  }
  static const ShiftOperatorPoly<BetaPoly>& interaction(int cap, BetaMode) {
    static MemoTable<int, ShiftOperatorPoly<BetaPoly>> table;
    return table.get(cap, [&] { return interaction_expansion_symbolic(cap); });
  }
};

}  // namespace prym
