#include "prym/exact_arith.hpp"
#include "prym/verify/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace prym;

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binom_gen(5, 2), 10);
  EXPECT_EQ(binom_gen(7, 0), 1);
  EXPECT_EQ(binom_gen(-4, 0), 1);
  EXPECT_EQ(binom_gen(3, 5), 0);
  // (-2)(-3)(-4)/3!
  EXPECT_EQ(binom_gen(-2, 3), -4);
  EXPECT_EQ(binom_gen(-1, 7), -1);
  EXPECT_THROW(binom_gen(4, -1), std::invalid_argument);
}

TEST(Binomial, LargeArgumentsStayExact) {
  Integer expected;
  mpz_bin_uiui(expected.get_mpz_t(), 200, 100);
  EXPECT_EQ(binom_gen(200, 100), expected);
}

TEST(Binomial, PascalRuleOnNegativeTops) {
  for (long s = -15; s <= 15; ++s)
    for (long t = 1; t <= 15; ++t) EXPECT_EQ(binom_gen(s, t), binom_gen(s - 1, t - 1) + binom_gen(s - 1, t)) << s << " " << t;
}

TEST(Binomial, MatchesPascalTriangle) {
  const auto rows = verify::pascal_triangle(25);
  for (int n = 0; n <= 25; ++n)
    for (int k = 0; k <= n; ++k) EXPECT_EQ(binom_gen(n, k), rows[n][k]);
}

TEST(Factorial, Values) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(5), 120);
  EXPECT_EQ(factorial(10), 3628800);
  EXPECT_THROW(factorial(-1), std::invalid_argument);
}

TEST(Pow2, BothSigns) {
  EXPECT_EQ(pow2(0), 1);
  EXPECT_EQ(pow2(10), 1024);
  EXPECT_EQ(pow2(-3), make_rational(1, 8));
}

TEST(Abel, SmallValues) {
  EXPECT_EQ(abel_coefficient(0, 0), make_rational(1, 2));
  EXPECT_EQ(abel_coefficient(0, 1), make_rational(-1, 4));
  EXPECT_EQ(abel_coefficient(1, 1), make_rational(1, 4));
  // (1+T)^{-1}/(2+T): 1/2, -3/4, 7/8, ...
  EXPECT_EQ(abel_coefficient(-1, 1), make_rational(-3, 4));
  EXPECT_EQ(abel_coefficient(-1, 2), make_rational(7, 8));
}

TEST(Abel, AgreesWithSeriesProduct) {
  for (long s = -10; s <= 10; ++s)
    for (int v = 0; v <= 14; ++v) EXPECT_EQ(abel_coefficient(s, v), verify::abel_by_series(s, v)) << s << " " << v;
}

TEST(AlternatingIdentity, AllPairsUpToTwelve) {
  for (int b = 2; b <= 12; ++b)
    for (int a = 1; a < b; ++a) {
      auto [lhs, rhs] = verify::alternating_binomial_sides(a, b);
      EXPECT_EQ(lhs, rhs) << a << " " << b;
    }
}

TEST(Rational, AlwaysCanonical) {
  Rational q = make_rational(6, -4);
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
}

TEST(Rational, RoundTripThroughText) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
  for (int k = 0; k < 500; ++k) {
    Rational q = make_rational(num(rng), den(rng));
    EXPECT_EQ(parse_rational(to_string(q)), q);
  }
  EXPECT_EQ(to_string(make_rational(4, 2)), "2");
  EXPECT_EQ(to_string(make_rational(-1, 24)), "-1/24");
}

TEST(Rational, ParseRejectsGarbage) {
  for (const char* bad : {"", "1/", "/2", "1/0", "a", "1.5", "--1", "1/-2", " 1"})
    EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
  EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
}
