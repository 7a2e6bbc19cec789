// prym: classes and Euler characteristics of pointed Brill-Noether loci on
// Prym varieties.
//
//   prym class     --genus G -r R --vanishing a0,...,ar [--beta 0|-1|symbolic] [--output plain|json|latex]
//   prym chi       --genus G -r R --vanishing a0,...,ar [--verify] [--output ...]
//   prym table     [--g-min 2] [--g-max 6] [--max-len 3] [--output ...]
//   prym selfcheck [--quick]
//
// Exit codes: 0 ok, 1 selfcheck failure, 2 invalid input, 3 route mismatch.

#include "prym/prym_bn.hpp"
#include "prym/render.hpp"
#include "prym/selfcheck.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitSelfcheck = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitMismatch = 3;

constexpr int kTableMaxGenus = 10;
constexpr int kTableMaxLength = 5;

struct RunRequest {
  int g = 0;
  int r = 0;
  std::vector<int> a;
  std::string beta = "0";
  std::string output = "plain";
  bool verify = false;
  bool quick = false;
  int g_min = 2;
  int g_max = 6;
  int max_len = 3;
};

void add_problem_options(CLI::App* cmd, RunRequest& req) {
  cmd->add_option("--genus", req.g, "genus g of the base curve (g >= 2)")->required();
  cmd->add_option("-r,--rank", req.r, "r: sections required, h^0 >= r+1")->required();
  cmd->add_option("--vanishing", req.a, "vanishing sequence a_0,...,a_r")->required()->delimiter(',');
}

void add_output_option(CLI::App* cmd, RunRequest& req) {
  cmd->add_option("--output", req.output, "plain, json or latex")
      ->check(CLI::IsMember({"plain", "json", "latex"}));
}

void emit(const prym::ClassResult& res, const std::string& output) {
  if (output == "json")
    std::cout << prym::to_json(res).dump(2) << "\n";
  else if (output == "latex")
    std::cout << prym::render_latex(res);
  else
    std::cout << prym::render_plain(res);
}

int run_class(const RunRequest& req) {
  const auto problem = prym::build_problem(req.g, req.r, req.a);
  emit(prym::compute_class(problem, prym::parse_beta_mode(req.beta)), req.output);
  return 0;
}

int run_chi(const RunRequest& req, unsigned threads) {
  const auto problem = prym::build_problem(req.g, req.r, req.a);
  const auto res = prym::compute_chi(problem, req.verify, threads);
  if (req.output == "plain" && !req.verify) {
    std::cout << prym::render_plain(res);
  } else if (req.output == "plain") {
    std::cout << prym::render_plain(res) << "verified: theorem and oracle agree\n";
  } else {
    emit(res, req.output);
  }
  return 0;
}

int run_table(const RunRequest& req, unsigned threads) {
  if (req.g_min < 2) throw prym::ProblemError("--g-min must be at least 2");
  if (req.g_max > kTableMaxGenus) throw prym::ProblemError("--g-max exceeds " + std::to_string(kTableMaxGenus));
  if (req.g_min > req.g_max) throw prym::ProblemError("--g-min exceeds --g-max");
  if (req.max_len < 0 || req.max_len > kTableMaxLength)
    throw prym::ProblemError("--max-len must lie in [0, " + std::to_string(kTableMaxLength) + "]");

  std::vector<prym::PrymProblem> problems;
  for (int g = req.g_min; g <= req.g_max; ++g)
    for (const auto& lambda : prym::strict_partitions(req.max_len, g - 1)) {
      int size = 0;
      for (int part : lambda) size += part;
      if (size <= g - 1) problems.push_back(prym::problem_from_partition(g, lambda));
    }

  struct Row {
    prym::Rational gamma;
    prym::Rational chi;
  };
  auto rows = prym::parallel_map<Row>(problems.size(), threads, [&](std::size_t i) {
    return Row{prym::chow_class_closed(problems[i].lambda), prym::euler_theorem(problems[i])};
  });

  if (req.output == "json") {
    prym::Json out = prym::Json::array();
    for (std::size_t i = 0; i < problems.size(); ++i)
      out.push_back(prym::Json{{"problem", prym::to_json(problems[i])},
                               {"gamma", prym::to_string(rows[i].gamma)},
                               {"exponent", problems[i].weight},
                               {"chi", prym::to_string(rows[i].chi)}});
    std::cout << out.dump(2) << "\n";
  } else if (req.output == "latex") {
    std::cout << "\\begin{tabular}{rllll}\n$g$ & $a$ & $\\lambda$ & class & $\\chi$ \\\\\n\\hline\n";
    for (std::size_t i = 0; i < problems.size(); ++i) {
      const auto& p = problems[i];
      std::cout << p.g << " & $(" << prym::join(p.a) << ")$ & $(" << prym::join(p.lambda) << ")$ & $"
                << prym::latex_class_term(rows[i].gamma, p.weight) << "$ & $" << prym::latex_rational(rows[i].chi)
                << "$ \\\\\n";
    }
    std::cout << "\\end{tabular}\n";
  } else {
    std::cout << "g\ta\tlambda\tgamma\tchi\n";
    for (std::size_t i = 0; i < problems.size(); ++i) {
      const auto& p = problems[i];
      std::cout << p.g << "\t(" << prym::join(p.a) << ")\t(" << prym::join(p.lambda) << ")\t"
                << prym::to_string(rows[i].gamma) << "\t" << prym::to_string(rows[i].chi) << "\n";
    }
  }
  return 0;
}

int run_selfcheck(const RunRequest& req, unsigned threads) {
  prym::SelfcheckConfig config;
  config.quick = req.quick;
  config.threads = threads;
  bool ok = true;
  for (const auto& outcome : prym::run_selfcheck(config)) {
    std::cout << outcome.name << ": " << (outcome.passed ? "PASS" : "FAIL") << " (" << outcome.cases << " cases)";
    if (!outcome.passed) std::cout << "  first failure: " << outcome.detail;
    std::cout << "\n";
    ok = ok && outcome.passed;
  }
  return ok ? 0 : kExitSelfcheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classes and Euler characteristics of pointed Brill-Noether loci on Prym varieties"};
  app.require_subcommand(1);
  RunRequest req;

  auto* cls = app.add_subcommand("class", "class of V^r_a(P) in CK, K_0 (beta=-1) or cohomology (beta=0)");
  add_problem_options(cls, req);
  cls->add_option("--beta", req.beta, "0, -1 or symbolic")->check(CLI::IsMember({"0", "-1", "symbolic"}));
  add_output_option(cls, req);

  auto* chi = app.add_subcommand("chi", "holomorphic Euler characteristic of V^r_a(P)");
  add_problem_options(chi, req);
  chi->add_flag("--verify", req.verify, "also integrate ch([O_V]) and require agreement");
  add_output_option(chi, req);

  auto* table = app.add_subcommand("table", "gamma and chi for all strict partitions in a genus range");
  table->add_option("--g-min", req.g_min, "smallest genus (>= 2)");
  table->add_option("--g-max", req.g_max, "largest genus (<= 10)");
  table->add_option("--max-len", req.max_len, "largest partition length (<= 5)");
  add_output_option(table, req);

  auto* selfcheck = app.add_subcommand("selfcheck", "run the invariant suite");
  selfcheck->add_flag("--quick", req.quick, "restrict to g <= 4 and smaller samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInvalid;
  }

  try {
    const unsigned threads = prym::thread_count_from_env();
    if (cls->parsed()) return run_class(req);
    if (chi->parsed()) return run_chi(req, threads);
    if (table->parsed()) return run_table(req, threads);
    if (selfcheck->parsed()) return run_selfcheck(req, threads);
  } catch (const prym::RouteMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return 0;
}
