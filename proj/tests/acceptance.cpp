// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. All comparisons are exact.

#include "cli_runner.hpp"
#include "prym/render.hpp"
#include "prym/selfcheck.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace prym;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("[%s] %2d. %s  (%s)\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  if (!ok) ++failures;
}

std::string cli_args(const PrymProblem& p) {
  std::string args = "--genus " + std::to_string(p.g) + " -r " + std::to_string(p.r) + " --vanishing " + join(p.a);
  return args;
}

}  // namespace

int main() {
  const auto suite = euler_suite(2, 7);

  {
    const auto start = std::chrono::steady_clock::now();
    std::size_t agree = 0;
    std::string first_bad;
    for (const auto& p : suite) {
      if (euler_theorem(p) == euler_oracle(p))
        ++agree;
      else if (first_bad.empty())
        first_bad = describe(p);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(1, "theorem equals oracle on the g <= 7 suite, under 60 s", agree == suite.size() && secs < 60.0,
           std::to_string(agree) + "/" + std::to_string(suite.size()) + " in " + std::to_string(secs) + " s" +
               (first_bad.empty() ? "" : ", first mismatch " + first_bad));
  }
  {
    const Rational a = euler_theorem(problem_from_partition(3, std::vector<int>{1}));
    const Rational b = euler_theorem(problem_from_partition(4, std::vector<int>{2, 1}));
    const Rational c = euler_theorem(problem_from_partition(2, std::vector<int>{1}));
    report(2, "anchored values", a == -1 && b == 2 && c == 1,
           "g=3 (1): " + to_string(a) + ", g=4 (2,1): " + to_string(b) + ", g=2 (1): " + to_string(c));
  }
  {
    std::size_t ok = 0;
    for (const auto& p : suite) ok += is_integer(euler_theorem(p)) ? 1 : 0;
    report(3, "integrality", ok == suite.size(), std::to_string(ok) + "/" + std::to_string(suite.size()));
  }
  {
    std::size_t ok = 0, total = 0, odd = 0;
    for (const auto& lambda : strict_partitions(5, 9)) {
      ++total;
      odd += lambda.size() % 2;
      ok += chow_class_pfaffian(lambda) == chow_class_closed(lambda) ? 1 : 0;
    }
    report(4, "cohomology Pfaffian equals product, l <= 5, parts <= 9", ok == total && odd > 0,
           std::to_string(ok) + "/" + std::to_string(total) + ", " + std::to_string(odd) + " odd length");
  }
  {
    std::size_t ok = 0;
    for (const auto& p : suite) ok += ch_k_class(p).coeff(p.weight) == chow_class_closed(p.lambda) ? 1 : 0;
    report(5, "K-class leading term", ok == suite.size(), std::to_string(ok) + "/" + std::to_string(suite.size()));
  }
  {
    std::size_t ok = 0, total = 0;
    for (int b = 2; b <= 12; ++b)
      for (int a = 1; a < b; ++a, ++total) {
        auto [lhs, rhs] = verify::alternating_binomial_sides(a, b);
        ok += lhs == rhs ? 1 : 0;
      }
    report(6, "alternating binomial identity, 1 <= li < lj <= 12", ok == total,
           std::to_string(ok) + "/" + std::to_string(total));
  }
  {
    std::mt19937_64 rng(20240611);
    std::size_t ok = 0, total = 0;
    for (std::size_t n : {2u, 4u, 6u, 8u})
      for (int k = 0; k < 50; ++k, ++total) {
        const auto m = verify::random_skew(n, rng);
        const Rational pf = pfaffian_matchings(m);
        bool good = pf == pfaffian_permutations(m);
        if (n <= 6) good = good && pf * pf == verify::determinant(verify::to_dense(m));
        ok += good ? 1 : 0;
      }
    report(7, "Pfaffian engines agree on random skew matrices", ok == total && total == 200,
           std::to_string(ok) + "/" + std::to_string(total));
  }
  {
    std::size_t ok = 0;
    for (int j = 1; j <= 20; ++j) ok += verify::chern_vanishing_coefficient(j) == 0 ? 1 : 0;
    report(8, "exponential cancellation, j = 1..20", ok == 20, std::to_string(ok) + "/20");
  }
  {
    const auto empty = empty_suite(50);
    std::size_t ok = 0;
    for (const auto& p : empty)
      ok += (euler_theorem(p) == 0 && euler_oracle(p) == 0 && ch_k_class(p).is_zero()) ? 1 : 0;
    report(9, "emptiness", ok == empty.size() && empty.size() == 50,
           std::to_string(ok) + "/" + std::to_string(empty.size()));
  }
  {
    std::size_t ok = 0;
    for (int r = 0; r <= 6; ++r) {
      auto [a, b] = classical_coefficient_branches(r);
      ok += a == b ? 1 : 0;
    }
    report(10, "classical coefficient branches agree, r <= 6", ok == 7, std::to_string(ok) + "/7");
  }
  {
    std::size_t deterministic = 0, round_trip = 0, runs_ok = 0;
    for (const auto& p : suite) {
      bool same = true, parsed = true, exit_ok = true;
      for (const char* cmd : {"chi", "class"}) {
        const std::string args = std::string(cmd) + " " + cli_args(p) + " --output json" +
                                 (std::string(cmd) == "chi" ? " --verify" : " --beta -1");
        const auto one = prym_test::run_cli(args, "PRYM_THREADS=1");
        const auto four = prym_test::run_cli(args, "PRYM_THREADS=4");
        exit_ok = exit_ok && one.status == 0 && four.status == 0;
        same = same && one.out == four.out;
        try {
          const ClassResult back = class_result_from_json(Json::parse(one.out));
          const ClassResult direct =
              std::string(cmd) == "chi" ? compute_chi(p, true) : compute_class(p, BetaMode::minus_one);
          parsed = parsed && back == direct && to_json(back).dump(2) + "\n" == one.out;
        } catch (const std::exception&) {
          parsed = false;
        }
      }
      deterministic += same ? 1 : 0;
      round_trip += parsed ? 1 : 0;
      runs_ok += exit_ok ? 1 : 0;
    }
    const auto t1 = prym_test::run_cli("table --g-max 7 --max-len 4 --output json", "PRYM_THREADS=1");
    const auto t4 = prym_test::run_cli("table --g-max 7 --max-len 4 --output json", "PRYM_THREADS=4");
    const bool table_same = t1.status == 0 && t1.out == t4.out;
    const std::size_t n = suite.size();
    report(11, "CLI determinism and JSON round-trip",
           deterministic == n && round_trip == n && runs_ok == n && table_same,
           "identical " + std::to_string(deterministic) + "/" + std::to_string(n) + ", round-trip " +
               std::to_string(round_trip) + "/" + std::to_string(n) + ", table " + (table_same ? "identical" : "differs"));
  }

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
