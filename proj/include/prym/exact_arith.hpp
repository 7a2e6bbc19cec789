#pragma once

/*
 * Exact integers and rationals.
 *
 * Integer and Rational are GMP's mpz_class / mpq_class. Every Rational
 * produced here is canonical (gcd(|p|, q) = 1, q > 0), so operator== is
 * structural equality and the string form "p/q" is unique.
 *
 * Beware of gmpxx expression templates: bind results to a named Integer or
 * Rational, never to `auto`.
 */

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prym {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// s(s-1)...(s-t+1)/t! for any integer s; the ordinary binomial when s >= 0.
inline Integer binom_gen(const Integer& s, long t) {
  if (t < 0) throw std::invalid_argument("binom_gen: negative lower index");
  Integer r = 1;
  for (long i = 0; i < t; ++i) {
    // r * (s - i) == (i + 1) * binom(s, i + 1), so the division is exact
    r *= Integer(s - i);
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(i + 1));
  }
  return r;
}

inline Rational pow2(long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? make_rational(1, p) : Rational(p);
}

/// Coefficient of T^v in (1 + T)^s / (2 + T).
///
/// This is the regularized value of the divergent alternating sum
/// sum_{u >= 0} (-1)^u binom(u + s, v): expand 1/(2 + T) as
/// sum_k (-T)^k / 2^{k+1} and collect.
inline Rational abel_coefficient(const Integer& s, long v) {
  if (v < 0) throw std::invalid_argument("abel_coefficient: negative degree");
  Rational sum = 0;
  for (long k = 0; k <= v; ++k) {
    Rational term = Rational(binom_gen(s, v - k)) * pow2(-(k + 1));
    if (k % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

/// 1/0!, 1/1!, ..., 1/n!
inline std::vector<Rational> inverse_factorials(long n) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n < 0 ? 0 : n + 1));
  Integer f = 1;
  for (long k = 0; k <= n; ++k) {
    if (k > 0) f *= k;
    out.push_back(make_rational(1, f));
  }
  return out;
}

// "p/q", or "p" when q == 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Parses "p" or "p/q" (optional leading '-', q > 0) into a canonical
/// Rational. Anything else throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view unsigned_num = num;
  if (!unsigned_num.empty() && unsigned_num.front() == '-') unsigned_num.remove_prefix(1);
  if (!digits(unsigned_num) || !digits(den))
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  Integer p{std::string(num)}, q{std::string(den)};
  if (q == 0) throw std::invalid_argument("malformed rational (zero denominator): '" + std::string(text) + "'");
  return make_rational(p, q);
}

}  // namespace prym
