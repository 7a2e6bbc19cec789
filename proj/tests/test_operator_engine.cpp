#include "prym/operator_engine.hpp"
#include "prym/verify/oracles.hpp"

#include <gtest/gtest.h>

#include <thread>
#include <vector>

using namespace prym;

TEST(Interaction, ClosedFormCoefficients) {
  auto k = interaction_expansion(4, BetaMode::minus_one);
  EXPECT_EQ(k.coeff(0, 0), 1);
  EXPECT_EQ(k.coeff(1, 1), -2);  // R
  EXPECT_EQ(k.coeff(2, 0), 1);   // beta^2 T^2
  EXPECT_EQ(k.coeff(1, 0), -1);  // beta T
  EXPECT_EQ(k.coeff(2, 1), 3);   // -beta (C(1,1) + C(2,1)) R T
  EXPECT_EQ(k.coeff(2, 2), 2);   // R^2

  auto z = interaction_expansion(4, BetaMode::zero);
  EXPECT_EQ(z.coeff(1, 1), -2);
  EXPECT_EQ(z.coeff(2, 2), 2);
  EXPECT_EQ(z.coeff(1, 0), 0);
  for (const auto& t : z.terms) EXPECT_EQ(t.raise, t.lower);
}

TEST(Interaction, SymbolicSpecializes) {
  for (int cap = 0; cap <= 9; ++cap) {
    auto sym = interaction_expansion_symbolic(cap);
    EXPECT_EQ(specialize(sym, Rational(-1)), interaction_expansion(cap, BetaMode::minus_one)) << cap;
    EXPECT_EQ(specialize(sym, Rational(0)), interaction_expansion(cap, BetaMode::zero)) << cap;
  }
}

TEST(Interaction, TimesDenominatorIsNumerator) {
  for (int cap = 0; cap <= 10; ++cap)
    for (const auto& [lm, value] : verify::interaction_times_denominator(interaction_expansion(cap, BetaMode::minus_one), cap)) {
      const auto [l, m] = lm;
      const Rational expected = (l == 0 && m == 0) ? 1 : (l == 1 && m == 0 ? -1 : 0);
      EXPECT_EQ(value, expected) << cap << " " << l << " " << m;
    }
}

TEST(Prefactor, NumericModes) {
  auto k = prefactor_expansion(0, 2, BetaMode::minus_one);
  EXPECT_EQ(k, (std::vector<Rational>{make_rational(1, 2), make_rational(-1, 4), make_rational(1, 8)}));
  auto z = prefactor_expansion(-3, 2, BetaMode::zero);
  EXPECT_EQ(z, (std::vector<Rational>{make_rational(1, 2), Rational(0), Rational(0)}));
  EXPECT_THROW(prefactor_expansion(0, 2, BetaMode::symbolic), std::invalid_argument);
  EXPECT_THROW(prefactor_expansion(0, -1, BetaMode::zero), std::invalid_argument);
}

TEST(Prefactor, SymbolicSpecializes) {
  for (long s = -7; s <= 4; ++s)
    for (int cap = 0; cap <= 8; ++cap) {
      auto sym = prefactor_expansion_symbolic(s, cap);
      auto k = prefactor_expansion(s, cap, BetaMode::minus_one);
      auto z = prefactor_expansion(s, cap, BetaMode::zero);
      for (int v = 0; v <= cap; ++v) {
        EXPECT_EQ(sym[v].evaluate(Rational(-1)), k[v]);
        EXPECT_EQ(sym[v].evaluate(Rational(0)), z[v]);
        EXPECT_LE(sym[v].degree(), v);
      }
    }
}

TEST(Apply, CohomologyEntryForTwoOne) {
  const int cap = 3;
  auto op = interaction_expansion(cap, BetaMode::zero);
  auto pre = prefactor_expansion(0, cap, BetaMode::zero);
  // 1/4 (d2 d1 - 2 d3 d0) = 1/4 (1/2 - 1/3)
  auto entry = apply_pair_operator<Rational>(op, 2, 1, pre, pre, cap);
  EXPECT_EQ(entry, ThetaPoly::monomial(cap, 3, make_rational(1, 24)));
}

TEST(Apply, BaseDegreeAboveCapIsZero) {
  auto op = interaction_expansion(2, BetaMode::minus_one);
  auto pre = prefactor_expansion(0, 2, BetaMode::minus_one);
  EXPECT_TRUE(apply_pair_operator<Rational>(op, 2, 1, pre, pre, 2).is_zero());
}

TEST(Apply, IdentityOperator) {
  ShiftOperatorPoly<Rational> id{{{Rational(1), 0, 0}}};
  std::vector<Rational> one{Rational(1)};
  EXPECT_EQ(apply_pair_operator<Rational>(id, 1, 0, one, one, 3), ThetaPoly::monomial(3, 1, 1));
}

TEST(Apply, NegativeLoweringVanishes) {
  // T_i^2 T_j^{-2} applied to d_1 d_1 needs d_{-1}
  ShiftOperatorPoly<Rational> op{{{Rational(1), 2, 2}}};
  std::vector<Rational> one{Rational(1)};
  EXPECT_TRUE(apply_pair_operator<Rational>(op, 1, 1, one, one, 5).is_zero());
  EXPECT_THROW(apply_pair_operator<Rational>(op, -1, 1, one, one, 5), std::invalid_argument);
}

TEST(Apply, SingleOperator) {
  std::vector<Rational> pre{make_rational(1, 2), make_rational(-1, 4)};
  auto entry = apply_single_operator<Rational>(1, pre, 3);
  EXPECT_EQ(entry.coeff(1), make_rational(1, 2));
  EXPECT_EQ(entry.coeff(2), make_rational(-1, 8));
  EXPECT_EQ(entry.coeff(3), 0);
}

TEST(Expansions, CachedValuesMatchAndAreSharedAcrossThreads) {
  std::vector<const ShiftOperatorPoly<Rational>*> seen(8);
  {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < seen.size(); ++t)
      workers.emplace_back([&, t] { seen[t] = &Expansions<Rational>::interaction(7, BetaMode::minus_one); });
  }
  for (auto* p : seen) EXPECT_EQ(p, seen.front());
  EXPECT_EQ(*seen.front(), interaction_expansion(7, BetaMode::minus_one));
  EXPECT_EQ(Expansions<BetaPoly>::prefactors(-2, 5, BetaMode::symbolic), prefactor_expansion_symbolic(-2, 5));
}

TEST(BetaModes, ParseAndPrint) {
  for (BetaMode m : {BetaMode::zero, BetaMode::minus_one, BetaMode::symbolic}) EXPECT_EQ(parse_beta_mode(to_string(m)), m);
  EXPECT_THROW(parse_beta_mode("1"), std::invalid_argument);
  EXPECT_EQ(beta_value(BetaMode::minus_one), -1);
}
