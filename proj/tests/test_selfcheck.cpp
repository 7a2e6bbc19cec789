#include "prym/selfcheck.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace prym;

TEST(Selfcheck, AllChecksPass) {
  for (const auto& outcome : run_selfcheck()) {
    EXPECT_TRUE(outcome.passed) << outcome.name << ": " << outcome.detail;
    EXPECT_GT(outcome.cases, 0u) << outcome.name;
  }
}

TEST(Selfcheck, QuickModeRunsEveryCheck) {
  EXPECT_EQ(run_selfcheck({.quick = true}).size(), run_selfcheck({.quick = true, .threads = 2}).size());
}

TEST(Selfcheck, CatchesSignFlipInG) {
  SelfcheckConfig config;
  config.quick = true;
  config.g = [](int m, int i, int j, std::span<const int> lambda, std::span<const int> v) {
    return -g_coeff(m, i, j, lambda, v);
  };
  bool equivalence_failed = false;
  for (const auto& outcome : run_selfcheck(config))
    if (outcome.name == "oracle-equivalence") equivalence_failed = !outcome.passed;
  EXPECT_TRUE(equivalence_failed);
}

TEST(Selfcheck, CatchesDroppedAlternatingTerm) {
  SelfcheckConfig config;
  config.quick = true;
  config.g = [](int m, int i, int j, std::span<const int> lambda, std::span<const int> v) {
    if (i == 0 || j == 0) return g_coeff(m, i, j, lambda, v);
    // keep only the leading term
    const int a = lambda[std::min(i, j) - 1] + v[std::min(i, j) - 1];
    const int b = lambda[std::max(i, j) - 1] + v[std::max(i, j) - 1];
    Rational t = make_rational(1, factorial(a + m) * factorial(b));
    if (m % 2 == 1) t = -t;
    return i < j ? t : Rational(-t);
  };
  bool equivalence_failed = false;
  for (const auto& outcome : run_selfcheck(config))
    if (outcome.name == "oracle-equivalence") equivalence_failed = !outcome.passed;
  EXPECT_TRUE(equivalence_failed);
}

TEST(Parallel, MapPreservesOrderAndPropagatesErrors) {
  auto squares = parallel_map<int>(100, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < squares.size(); ++i) EXPECT_EQ(squares[i], static_cast<int>(i * i));
  EXPECT_THROW(parallel_map<int>(10, 3, [](std::size_t i) -> int {
                 if (i == 7) throw std::runtime_error("boom");
                 return 0;
               }),
               std::runtime_error);
  EXPECT_TRUE(parallel_map<int>(0, 4, [](std::size_t) { return 1; }).empty());
}

TEST(Parallel, ThreadCountFromEnvironment) {
  ::setenv("PRYM_THREADS", "3", 1);
  EXPECT_EQ(thread_count_from_env(), 3u);
  ::setenv("PRYM_THREADS", "0", 1);
  EXPECT_GE(thread_count_from_env(), 1u);
  ::setenv("PRYM_THREADS", "many", 1);
  EXPECT_THROW(thread_count_from_env(), std::invalid_argument);
  ::unsetenv("PRYM_THREADS");
  EXPECT_GE(thread_count_from_env(), 1u);
}
