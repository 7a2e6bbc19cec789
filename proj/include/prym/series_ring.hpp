#pragma once

/*
 * Truncated series in theta' (the restricted theta class).
 *
 * Truncated<S> keeps coefficients of theta'^0 .. theta'^cap and silently
 * drops everything above cap. Class computations always use cap = dim of
 * the Prym variety, so the dropped part integrates to zero.
 *
 * S is either Rational (ThetaPoly) or BetaPoly (ThetaBetaPoly), the latter
 * carrying the connective K-theory parameter beta as an untruncated
 * polynomial variable.
 */

#include "prym/exact_arith.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace prym {

/// Polynomial in beta with Rational coefficients. Sparse; never stores zeros.
class BetaPoly {
 public:
  BetaPoly() = default;
  BetaPoly(const Rational& c) { set(0, c); }  // NOLINT: constants embed implicitly
  BetaPoly(int c) : BetaPoly(Rational(c)) {}  // NOLINT

  static BetaPoly monomial(int exponent, const Rational& c) {
    BetaPoly p;
    p.set(exponent, c);
    return p;
  }
  static BetaPoly beta() { return monomial(1, 1); }

  Rational coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  const std::map<int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

  void set(int exponent, const Rational& c) {
    if (exponent < 0) throw std::invalid_argument("BetaPoly: negative exponent");
    if (c == 0)
      terms_.erase(exponent);
    else
      terms_[exponent] = c;
  }

  Rational evaluate(const Rational& beta) const {
    Rational acc = 0;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      int gap = it->first - (std::next(it) == terms_.rend() ? 0 : std::next(it)->first);
      acc += it->second;
      for (int k = 0; k < gap; ++k) acc *= beta;
    }
    return acc;
  }

  BetaPoly& operator+=(const BetaPoly& o) {
    for (const auto& [e, c] : o.terms_) set(e, coeff(e) + c);
    return *this;
  }
  BetaPoly& operator-=(const BetaPoly& o) {
    for (const auto& [e, c] : o.terms_) set(e, coeff(e) - c);
    return *this;
  }
  BetaPoly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [e, v] : terms_) v *= c;
    }
    return *this;
  }

  friend BetaPoly operator+(BetaPoly a, const BetaPoly& b) { return a += b; }
  friend BetaPoly operator-(BetaPoly a, const BetaPoly& b) { return a -= b; }
  friend BetaPoly operator-(BetaPoly a) { return a *= Rational(-1); }
  friend BetaPoly operator*(BetaPoly a, const Rational& c) { return a *= c; }
  friend BetaPoly operator*(const BetaPoly& a, const BetaPoly& b) {
    std::map<int, Rational> acc;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) acc[ea + eb] += ca * cb;
    BetaPoly out;
    for (const auto& [e, c] : acc) out.set(e, c);
    return out;
  }
  BetaPoly& operator*=(const BetaPoly& o) { return *this = *this * o; }

  friend bool operator==(const BetaPoly&, const BetaPoly&) = default;

 private:
  std::map<int, Rational> terms_;
};

inline Rational specialize(const BetaPoly& p, const Rational& beta) { return p.evaluate(beta); }
inline Rational specialize(const Rational& c, const Rational&) { return c; }

template <class S>
class Truncated {
 public:
  using scalar_type = S;

  Truncated() = default;
  explicit Truncated(int cap) : cap_(cap), coeffs_(checked_len(cap)) {}
  Truncated(int cap, std::vector<S> coeffs) : cap_(cap), coeffs_(std::move(coeffs)) {
    coeffs_.resize(checked_len(cap));
  }

  static Truncated constant(int cap, const S& c) {
    Truncated t(cap);
    t.coeffs_[0] = c;
    return t;
  }
  /// c * theta'^degree, or zero if degree lies outside [0, cap].
  static Truncated monomial(int cap, int degree, const S& c) {
    Truncated t(cap);
    if (degree >= 0 && degree <= cap) t.coeffs_[static_cast<std::size_t>(degree)] = c;
    return t;
  }

  int cap() const { return cap_; }
  const std::vector<S>& coeffs() const { return coeffs_; }

  S coeff(int d) const {
    if (d < 0 || d > cap_) return S{};
    return coeffs_[static_cast<std::size_t>(d)];
  }
  void add_to(int d, const S& c) {
    if (d >= 0 && d <= cap_) coeffs_[static_cast<std::size_t>(d)] += c;
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const S& c) { return c == S{}; });
  }

  Truncated& operator+=(const Truncated& o) {
    require_same_cap(o);
    for (std::size_t d = 0; d < coeffs_.size(); ++d) coeffs_[d] += o.coeffs_[d];
    return *this;
  }
  Truncated& operator-=(const Truncated& o) {
    require_same_cap(o);
    for (std::size_t d = 0; d < coeffs_.size(); ++d) coeffs_[d] -= o.coeffs_[d];
    return *this;
  }
  Truncated& scale(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend Truncated operator+(Truncated a, const Truncated& b) { return a += b; }
  friend Truncated operator-(Truncated a, const Truncated& b) { return a -= b; }
  friend Truncated operator-(Truncated a) { return a.scale(Rational(-1)); }
  friend Truncated operator*(Truncated a, const Rational& c) { return a.scale(c); }
  friend Truncated operator*(const Truncated& a, const Truncated& b) {
    a.require_same_cap(b);
    Truncated out(a.cap_);
    for (int i = 0; i <= a.cap_; ++i) {
      const S& x = a.coeffs_[static_cast<std::size_t>(i)];
      if (x == S{}) continue;
      for (int j = 0; i + j <= a.cap_; ++j) {
        const S& y = b.coeffs_[static_cast<std::size_t>(j)];
        if (y == S{}) continue;
        out.coeffs_[static_cast<std::size_t>(i + j)] += x * y;
      }
    }
    return out;
  }
  Truncated& operator*=(const Truncated& o) { return *this = *this * o; }

  friend bool operator==(const Truncated&, const Truncated&) = default;

 private:
  static std::size_t checked_len(int cap) {
    if (cap < 0) throw std::invalid_argument("truncation cap must be nonnegative");
    return static_cast<std::size_t>(cap) + 1;
  }
  void require_same_cap(const Truncated& o) const {
    if (cap_ != o.cap_) throw std::invalid_argument("truncated series with different caps");
  }

  int cap_ = 0;
  std::vector<S> coeffs_{S{}};
};

using ThetaPoly = Truncated<Rational>;
using ThetaBetaPoly = Truncated<BetaPoly>;

/// The degree-j Chern class d_j = theta'^j / j!; zero for j < 0 or j > cap.
inline ThetaPoly d_value(long j, int cap) {
  if (j < 0 || j > cap) return ThetaPoly(cap);
  return ThetaPoly::monomial(cap, static_cast<int>(j), make_rational(1, factorial(j)));
}

/// Truncation of e^{sign * theta'}.
inline ThetaPoly exp_series(int cap, int sign = 1) {
  ThetaPoly e(cap);
  auto inv = inverse_factorials(cap);
  for (int d = 0; d <= cap; ++d) {
    Rational c = inv[static_cast<std::size_t>(d)];
    if (sign < 0 && d % 2 == 1) c = -c;
    e.add_to(d, c);
  }
  return e;
}

inline ThetaPoly specialize(const ThetaBetaPoly& p, const Rational& beta) {
  ThetaPoly out(p.cap());
  for (int d = 0; d <= p.cap(); ++d) out.add_to(d, p.coeff(d).evaluate(beta));
  return out;
}

inline ThetaBetaPoly lift(const ThetaPoly& p) {
  ThetaBetaPoly out(p.cap());
  for (int d = 0; d <= p.cap(); ++d) out.add_to(d, BetaPoly(p.coeff(d)));
  return out;
}

/// Rewrites a theta'-series in the xi normalization (theta' = 2 xi).
template <class S>
Truncated<S> to_xi(const Truncated<S>& p) {
  Truncated<S> out(p.cap());
  for (int d = 0; d <= p.cap(); ++d) {
    S c = p.coeff(d);
    c *= pow2(d);
    out.add_to(d, c);
  }
  return out;
}

}  // namespace prym
