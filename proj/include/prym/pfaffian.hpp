#pragma once

/*
 * Pfaffians of skew-symmetric matrices over a caller-supplied commutative
 * ring.
 *
 * The ring is reached only through + - * and ring_traits<R>: one_like()
 * builds the unit matching a zero element (truncated series need their cap),
 * divide() divides exactly by an integer.
 */

#include "prym/exact_arith.hpp"
#include "prym/series_ring.hpp"

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <numeric>
#include <span>
#include <type_traits>
#include <stdexcept>
#include <vector>

namespace prym {

template <class R>
struct ring_traits;

template <>
struct ring_traits<Rational> {
  static Rational one_like(const Rational&) { return 1; }
  static Rational divide(const Rational& a, const Integer& k) { return a / Rational(k); }
};

template <>
struct ring_traits<BetaPoly> {
  static BetaPoly one_like(const BetaPoly&) { return BetaPoly(1); }
  static BetaPoly divide(const BetaPoly& a, const Integer& k) { return a * make_rational(1, k); }
};

template <class S>
struct ring_traits<Truncated<S>> {
  static Truncated<S> one_like(const Truncated<S>& zero) {
    return Truncated<S>::constant(zero.cap(), ring_traits<S>::one_like(S{}));
  }
  static Truncated<S> divide(const Truncated<S>& a, const Integer& k) { return a * make_rational(1, k); }
};

template <class R>
concept CommutativeRing = std::equality_comparable<R> && requires(const R& a, const R& b, const Integer& k) {
  { a + b } -> std::convertible_to<R>;
  { a - b } -> std::convertible_to<R>;
  { -a } -> std::convertible_to<R>;
  { a * b } -> std::convertible_to<R>;
  { ring_traits<R>::one_like(a) } -> std::same_as<R>;
  { ring_traits<R>::divide(a, k) } -> std::same_as<R>;
};

/// Square skew-symmetric matrix. Only entries above the diagonal are stored;
/// the diagonal is zero and (j, i) reads as -(i, j).
template <CommutativeRing R>
class SkewMatrix {
 public:
  SkewMatrix(std::size_t n, R zero) : n_(n), zero_(std::move(zero)), upper_(n * (n ? n - 1 : 0) / 2, zero_) {}

  std::size_t size() const { return n_; }
  const R& zero() const { return zero_; }

  R at(std::size_t i, std::size_t j) const {
    check(i, j);
    if (i == j) return zero_;
    if (i < j) return upper_[index(i, j)];
    return -upper_[index(j, i)];
  }

  /// Sets (i, j) and implicitly (j, i) = -value. Diagonal writes are rejected.
  void set(std::size_t i, std::size_t j, R value) {
    check(i, j);
    if (i == j) throw std::invalid_argument("SkewMatrix: diagonal entries are fixed at zero");
    if (i < j)
      upper_[index(i, j)] = std::move(value);
    else
      upper_[index(j, i)] = -value;
  }

  /// Simultaneous row/column swap.
  SkewMatrix swapped(std::size_t a, std::size_t b) const {
    SkewMatrix out(n_, zero_);
    auto relabel = [&](std::size_t k) { return k == a ? b : (k == b ? a : k); };
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) out.set(relabel(i), relabel(j), at(i, j));
    return out;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("SkewMatrix index out of range");
  }
  std::size_t index(std::size_t i, std::size_t j) const {
    // row-major strict upper triangle
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t n_;
  R zero_;
  std::vector<R> upper_;
};

namespace detail {

template <class R>
R matching_sum(const SkewMatrix<R>& m, std::vector<std::size_t>& rest) {
  if (rest.empty()) return ring_traits<R>::one_like(m.zero());
  R total = m.zero();
  const std::size_t first = rest[0];
  for (std::size_t k = 1; k < rest.size(); ++k) {
    R entry = m.at(first, rest[k]);
    if (entry == m.zero()) continue;
    std::vector<std::size_t> sub;
    sub.reserve(rest.size() - 2);
    for (std::size_t t = 1; t < rest.size(); ++t)
      if (t != k) sub.push_back(rest[t]);
    R term = entry * matching_sum(m, sub);
    // pairing rest[0] with rest[k] crosses k - 1 indices
    if (k % 2 == 1)
      total = total + term;
    else
      total = total - term;
  }
  return total;
}

inline void require_even(std::size_t n) {
  if (n % 2 != 0) throw std::invalid_argument("Pfaffian of an odd-size matrix; augment it first");
}

}  // namespace detail

/// Sum over perfect matchings, each weighted by its crossing sign.
/// (n-1)!! terms; this is the production path.
template <CommutativeRing R>
R pfaffian_matchings(const SkewMatrix<R>& m) {
  detail::require_even(m.size());
  std::vector<std::size_t> all(m.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return detail::matching_sum(m, all);
}

/// Parity of a permutation of 0..n-1, by cycle decomposition.
inline int permutation_sign(std::span<const std::size_t> perm) {
  std::vector<char> seen(perm.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

/// 1 / (2^{n/2} (n/2)!) * sum_{sigma in S_n} sgn(sigma) prod_j m(sigma(2j-1), sigma(2j)).
/// n! terms; kept to evaluate formulas stated in exactly this shape.
template <CommutativeRing R>
R pfaffian_permutations(const SkewMatrix<R>& m) {
  detail::require_even(m.size());
  const std::size_t n = m.size();
  if (n == 0) return ring_traits<R>::one_like(m.zero());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  R total = m.zero();
  do {
    R prod = m.at(perm[0], perm[1]);
    for (std::size_t j = 2; j < n && !(prod == m.zero()); j += 2) prod = prod * m.at(perm[j], perm[j + 1]);
    if (prod == m.zero()) continue;
    if (permutation_sign(perm) > 0)
      total = total + prod;
    else
      total = total - prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const long half = static_cast<long>(n / 2);
  Integer norm = factorial(half);
  norm <<= static_cast<mp_bitcnt_t>(half);
  return ring_traits<R>::divide(total, norm);
}

/// Embeds an odd-size skew matrix (indices 1..l) into size l + 1 by
/// prepending index 0 with m(0, j) = row0[j - 1].
template <CommutativeRing R>
SkewMatrix<R> augment_odd(const SkewMatrix<R>& m, std::type_identity_t<std::span<const R>> row0) {
  if (m.size() % 2 == 0) throw std::invalid_argument("augment_odd: matrix size is already even");
  if (row0.size() != m.size()) throw std::invalid_argument("augment_odd: boundary row length does not match matrix size");
  SkewMatrix<R> out(m.size() + 1, m.zero());
  for (std::size_t j = 0; j < m.size(); ++j) out.set(0, j + 1, row0[j]);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) out.set(i + 1, j + 1, m.at(i, j));
  return out;
}

}  // namespace prym
