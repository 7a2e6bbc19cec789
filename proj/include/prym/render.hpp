#pragma once

/*
 * Output formats for class and Euler characteristic results.
 *
 * JSON layout:
 *   {"problem": {"g", "r", "a", "lambda", "parity", "expected_empty"},
 *    "result":  {"kind", "gamma", "exponent", "theta_poly", "xi_poly", "chi"},
 *    "meta":    {"beta", "normalization", "convention_flags", "versions"}}
 * Rationals are "p/q" strings ("p" when q = 1). A theta_poly is
 * {"cap": n, "coeffs": [...]}; with symbolic beta each coefficient is an
 * object mapping beta exponents to rationals.
 */

#include "prym/exact_arith.hpp"
#include "prym/operator_engine.hpp"
#include "prym/prym_bn.hpp"
#include "prym/series_ring.hpp"

#include <json.hpp>

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace prym {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kNormalization = "theta_prime = 2 xi";

// --- JSON ---------------------------------------------------------------------

inline Json to_json(const BetaPoly& p) {
  Json out = Json::object();
  for (const auto& [e, c] : p.terms()) out[std::to_string(e)] = to_string(c);
  return out;
}

inline Json to_json(const Rational& q) { return to_string(q); }

template <class S>
Json to_json(const Truncated<S>& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
  return Json{{"cap", p.cap()}, {"coeffs", std::move(coeffs)}};
}

inline Json to_json(const PrymProblem& p) {
  return Json{{"g", p.g},         {"r", p.r},           {"a", p.a}, {"lambda", p.lambda},
              {"parity", p.parity()}, {"expected_empty", p.expected_empty}};
}

inline Json to_json(const ClassResult& res) {
  Json result;
  result["kind"] = to_string(res.kind);
  result["gamma"] = res.gamma ? Json(to_string(*res.gamma)) : Json(nullptr);
  result["exponent"] = res.exponent ? Json(*res.exponent) : Json(nullptr);
  std::visit(
      [&](const auto& poly) {
        result["theta_poly"] = to_json(poly);
        result["xi_poly"] = to_json(to_xi(poly));
      },
      res.poly);
  result["chi"] = res.chi ? Json(to_string(*res.chi)) : Json(nullptr);

  Json meta;
  meta["beta"] = std::string(to_string(res.beta));
  meta["normalization"] = kNormalization;
  meta["convention_flags"] = res.convention_flags;
  meta["versions"] = Json{{"prym", kVersion}, {"gmp", gmp_version}};
  return Json{{"problem", to_json(res.problem)}, {"result", std::move(result)}, {"meta", std::move(meta)}};
}

inline Rational rational_from_json(const Json& j) { return parse_rational(j.get<std::string>()); }

inline BetaPoly beta_poly_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("beta polynomial must be a JSON object");
  BetaPoly p;
  for (const auto& [key, value] : j.items()) p.set(std::stoi(key), rational_from_json(value));
  return p;
}

inline PrymProblem problem_from_json(const Json& j) {
  PrymProblem p = build_problem(j.at("g").get<int>(), j.at("r").get<int>(), j.at("a").get<std::vector<int>>());
  if (j.at("lambda").get<std::vector<int>>() != p.lambda || j.at("parity").get<std::string>() != p.parity() ||
      j.at("expected_empty").get<bool>() != p.expected_empty)
    throw std::invalid_argument("problem echo is inconsistent with its vanishing sequence");
  return p;
}

/// Inverse of to_json(ClassResult).
inline ClassResult class_result_from_json(const Json& j) {
  ClassResult res;
  res.problem = problem_from_json(j.at("problem"));
  const Json& result = j.at("result");
  const Json& meta = j.at("meta");
  res.beta = parse_beta_mode(meta.at("beta").get<std::string>());
  const std::string kind = result.at("kind").get<std::string>();
  if (kind == "cohomology")
    res.kind = ClassKind::cohomology;
  else if (kind == "chern_character_K")
    res.kind = ClassKind::chern_character_K;
  else if (kind == "connective")
    res.kind = ClassKind::connective;
  else
    throw std::invalid_argument("unknown result kind '" + kind + "'");
  if (!result.at("gamma").is_null()) res.gamma = rational_from_json(result.at("gamma"));
  if (!result.at("exponent").is_null()) res.exponent = result.at("exponent").get<int>();
  if (!result.at("chi").is_null()) res.chi = rational_from_json(result.at("chi"));

  const Json& poly = result.at("theta_poly");
  const int cap = poly.at("cap").get<int>();
  const Json& coeffs = poly.at("coeffs");
  if (coeffs.size() != static_cast<std::size_t>(cap) + 1) throw std::invalid_argument("theta_poly length does not match cap");
  if (res.beta == BetaMode::symbolic) {
    std::vector<BetaPoly> c;
    for (const auto& x : coeffs) c.push_back(beta_poly_from_json(x));
    res.poly = ThetaBetaPoly(cap, std::move(c));
  } else {
    std::vector<Rational> c;
    for (const auto& x : coeffs) c.push_back(rational_from_json(x));
    res.poly = ThetaPoly(cap, std::move(c));
  }
  res.convention_flags = meta.at("convention_flags").get<std::vector<std::string>>();
  return res;
}

// --- plain text -------------------------------------------------------------------

inline std::string join(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

inline std::string beta_poly_text(const BetaPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    const std::string power = e == 1 ? "beta" : "beta^" + std::to_string(e);
    std::string term = to_string(c);
    if (e > 0) term = c == 1 ? power : c == -1 ? "-" + power : term + "*" + power;
    out += out.empty() ? term : " + " + term;
  }
  return "(" + out + ")";
}

inline std::string coeff_text(const Rational& c) { return to_string(c); }
inline std::string coeff_text(const BetaPoly& c) { return beta_poly_text(c); }

template <class S>
std::string coefficient_list(const Truncated<S>& p) {
  std::string out;
  for (int d = 0; d <= p.cap(); ++d) out += (d ? ", " : "") + coeff_text(p.coeff(d));
  return out;
}

inline std::string problem_line(const PrymProblem& p) {
  std::ostringstream os;
  os << "problem: g=" << p.g << " r=" << p.r << " a=(" << join(p.a) << ") lambda=(" << join(p.lambda)
     << ") l=" << p.length() << " parity=" << p.parity() << " dim=" << p.dim << " codim=" << p.weight;
  if (p.expected_empty) os << " expected_empty";
  return os.str();
}

inline std::string render_plain(const ClassResult& res) {
  std::ostringstream os;
  os << problem_line(res.problem) << "\n";
  if (res.chi) {
    os << "chi = " << to_string(*res.chi) << "\n";
    return os.str();
  }
  if (res.kind == ClassKind::cohomology) {
    os << "gamma = " << to_string(*res.gamma) << ", exponent " << *res.exponent << "   [V] = gamma (2xi)^"
       << *res.exponent << "\n";
  }
  std::visit(
      [&](const auto& poly) {
        os << "theta' coefficients (cap " << poly.cap() << "): " << coefficient_list(poly) << "\n";
        os << "xi coefficients: " << coefficient_list(to_xi(poly)) << "\n";
      },
      res.poly);
  os << "beta=" << to_string(res.beta) << "  normalization: " << kNormalization << "\n";
  return os.str();
}

// --- LaTeX ------------------------------------------------------------------------

inline std::string latex_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  Integer num = q.get_num();
  std::string sign = num < 0 ? "-" : "";
  if (num < 0) num = -num;
  return sign + "\\frac{" + num.get_str() + "}{" + q.get_den().get_str() + "}";
}

inline std::string latex_beta_poly(const BetaPoly& p) {
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    std::string term = latex_rational(c);
    if (e == 1) term += "\\beta";
    if (e > 1) term += "\\beta^{" + std::to_string(e) + "}";
    if (out.empty())
      out = term;
    else if (term.front() == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

inline std::string latex_class_term(const Rational& c, int degree) {
  return latex_rational(c) + "(2\\xi)^{" + std::to_string(degree) + "}";
}

template <class S>
std::string latex_series(const Truncated<S>& p) {
  std::string out;
  for (int d = 0; d <= p.cap(); ++d) {
    const S c = p.coeff(d);
    if (c == S{}) continue;
    std::string term;
    if constexpr (std::is_same_v<S, Rational>) {
      term = latex_class_term(c, d);
    } else {
      term = "\\left(" + latex_beta_poly(c) + "\\right)(2\\xi)^{" + std::to_string(d) + "}";
    }
    if (out.empty())
      out = term;
    else if (term.front() == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

inline std::string render_latex(const ClassResult& res) {
  if (res.chi) return latex_rational(*res.chi) + "\n";
  if (res.kind == ClassKind::cohomology) return latex_class_term(*res.gamma, *res.exponent) + "\n";
  return std::visit([](const auto& poly) { return latex_series(poly); }, res.poly) + "\n";
}

}  // namespace prym
