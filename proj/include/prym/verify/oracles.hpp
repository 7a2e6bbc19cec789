#pragma once

/*
 * Independent reference computations used by the self-check and the test
 * suites. Nothing here calls the production path it is compared against:
 * binomials come from Pascal's triangle, determinants from fraction-free
 * elimination, series from repeated multiplication.
 */

#include "prym/exact_arith.hpp"
#include "prym/operator_engine.hpp"
#include "prym/pfaffian.hpp"
#include "prym/series_ring.hpp"

#include <cstddef>
#include <random>
#include <utility>
#include <vector>

namespace prym::verify {

/// Rows 0..n of Pascal's triangle.
inline std::vector<std::vector<Integer>> pascal_triangle(int n) {
  std::vector<std::vector<Integer>> rows;
  for (int i = 0; i <= n; ++i) {
    std::vector<Integer> row(static_cast<std::size_t>(i) + 1, Integer(1));
    for (int k = 1; k < i; ++k)
      row[static_cast<std::size_t>(k)] = rows.back()[static_cast<std::size_t>(k - 1)] + rows.back()[static_cast<std::size_t>(k)];
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Both sides of sum_{u=1}^{b} (-1)^u C(a+b, a+u) = -C(a+b-1, a).
inline std::pair<Integer, Integer> alternating_binomial_sides(int a, int b) {
  const auto pascal = pascal_triangle(a + b);
  auto c = [&](int n, int k) -> Integer {
    if (k < 0 || k > n) return 0;
    return pascal[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
  };
  Integer lhs = 0;
  for (int u = 1; u <= b; ++u) lhs += (u % 2 == 0 ? 1 : -1) * c(a + b, a + u);
  Integer rhs = -c(a + b - 1, a);
  return {lhs, rhs};
}

/// T^v coefficient of (1 + T)^s * sum_k (-T)^k / 2^{k+1}, by truncated
/// polynomial multiplication. Negative s multiplies by 1/(1+T) = sum (-T)^k.
inline Rational abel_by_series(long s, int v) {
  const std::size_t len = static_cast<std::size_t>(v) + 1;
  std::vector<Rational> acc(len, Rational(0));
  acc[0] = 1;
  auto multiply = [&](const std::vector<Rational>& factor) {
    std::vector<Rational> out(len, Rational(0));
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = 0; i + j < len; ++j) out[i + j] += acc[i] * factor[j];
    acc = std::move(out);
  };
  std::vector<Rational> one_plus_t(len, Rational(0)), inverse(len), half_series(len);
  one_plus_t[0] = 1;
  if (len > 1) one_plus_t[1] = 1;
  for (std::size_t k = 0; k < len; ++k) {
    inverse[k] = k % 2 == 0 ? 1 : -1;
    half_series[k] = inverse[k] * pow2(-static_cast<long>(k + 1));
  }
  for (long i = 0; i < (s < 0 ? -s : s); ++i) multiply(s >= 0 ? one_plus_t : inverse);
  multiply(half_series);
  return acc[static_cast<std::size_t>(v)];
}

inline std::vector<std::vector<Rational>> to_dense(const SkewMatrix<Rational>& m) {
  std::vector<std::vector<Rational>> out(m.size(), std::vector<Rational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = m.at(i, j);
  return out;
}

/// det by clearing denominators and running Bareiss elimination on the
/// integer matrix.
inline Rational determinant(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer common = 1;
  for (const auto& row : a)
    for (const auto& x : row) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), x.get_den_mpz_t());
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational scaled = a[i][j] * Rational(common);
      m[i][j] = scaled.get_num();
    }
  int sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer numer = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), numer.get_mpz_t(), previous.get_mpz_t());
      }
    previous = m[k][k];
  }
  Integer common_pow;
  mpz_pow_ui(common_pow.get_mpz_t(), common.get_mpz_t(), static_cast<unsigned long>(n));
  return make_rational(sign * m[n - 1][n - 1], common_pow);
}

/// Coefficient of theta'^j in e^{-theta'} e^{theta'}, both truncated at j.
inline Rational chern_vanishing_coefficient(int j) {
  return (exp_series(j, -1) * exp_series(j, 1)).coeff(j);
}

/// Multiplies the expansion of (1 - R)/(1 + R + T) by (1 + R + T) and
/// returns the coefficients at (l, m), l + m <= cap, keyed by (l, m).
inline std::vector<std::pair<std::pair<int, int>, Rational>> interaction_times_denominator(
    const ShiftOperatorPoly<Rational>& op, int cap) {
  std::vector<std::vector<Rational>> grid(static_cast<std::size_t>(cap) + 1,
                                          std::vector<Rational>(static_cast<std::size_t>(cap) + 1));
  auto at = [&](int l, int m) -> Rational& { return grid[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)]; };
  for (const auto& t : op.terms) {
    const int l = t.lower, m = t.raise - t.lower;
    if (l + m > cap) continue;
    at(l, m) += t.coeff;
    if (l + 1 + m <= cap) at(l + 1, m) += t.coeff;
    if (l + m + 1 <= cap) at(l, m + 1) += t.coeff;
  }
  std::vector<std::pair<std::pair<int, int>, Rational>> out;
  for (int l = 0; l <= cap; ++l)
    for (int m = 0; l + m <= cap; ++m) out.push_back({{l, m}, at(l, m)});
  return out;
}

/// Random skew matrix with entries p/q, |p| <= 9, 1 <= q <= 9.
inline SkewMatrix<Rational> random_skew(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  SkewMatrix<Rational> m(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, make_rational(num(rng), den(rng)));
  return m;
}

/// Random truncated series with small rational coefficients.
inline ThetaPoly random_theta_poly(int cap, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  ThetaPoly p(cap);
  for (int d = 0; d <= cap; ++d) p.add_to(d, make_rational(num(rng), den(rng)));
  return p;
}

}  // namespace prym::verify
