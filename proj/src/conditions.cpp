#include "powerpos/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "powerpos/errors.hpp"
#include "powerpos/eventual.hpp"

namespace powerpos {

namespace {

void require_nonconstant_homogeneous(const Polynomial& p, const char* op) {
  if (!p.is_homogeneous()) throw DomainError(std::string(op) + " requires a homogeneous polynomial");
  if (p.is_constant()) throw DomainError(std::string(op) + " requires a nonconstant polynomial");
}

std::vector<GaussianRational> real_point(const std::vector<Rational>& x) {
  std::vector<GaussianRational> z;
  z.reserve(x.size());
  for (const auto& v : x) z.push_back({v, 0});
  return z;
}

// Compositions of `total` into `parts` nonnegative parts.
void compositions(unsigned total, std::size_t parts, std::vector<unsigned>& cur, std::size_t pos,
                  const std::function<bool(const std::vector<unsigned>&)>& visit, bool& stop) {
  if (stop) return;
  if (pos + 1 == parts) {
    cur[pos] = total;
    if (!visit(cur)) stop = true;
    return;
  }
  for (unsigned e = 0; e <= total && !stop; ++e) {
    cur[pos] = e;
    compositions(total - e, parts, cur, pos + 1, visit, stop);
  }
}

}  // namespace

std::string to_string(Condition c) {
  switch (c) {
    case Condition::Pos1: return "Pos1";
    case Condition::Pos2: return "Pos2";
    case Condition::Pos3: return "Pos3";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "Holds") return Verdict::Holds;
  if (s == "Fails") return Verdict::Fails;
  if (s == "Inconclusive") return Verdict::Inconclusive;
  throw DomainError("unknown verdict '" + s + "'");
}

std::string to_string(SgcsResult r) {
  switch (r) {
    case SgcsResult::StrictHolds: return "StrictHolds";
    case SgcsResult::EqualityOnDependent: return "EqualityOnDependent";
    case SgcsResult::Violated: return "Violated";
  }
  return "?";
}

nlohmann::json to_json(const ConditionReport& report) {
  nlohmann::json j;
  j["condition"] = to_string(report.condition);
  j["verdict"] = to_string(report.verdict);
  if (report.witness) {
    const bool complex = report.condition == Condition::Pos3;
    nlohmann::json pt = nlohmann::json::array();
    for (const auto& c : report.witness->point) {
      if (complex) {
        pt.push_back({to_string(c.re), to_string(c.im)});
      } else {
        pt.push_back(to_string(c.re));
      }
    }
    j["witness"] = {{complex ? "z" : "x", pt}, {"value", to_string(report.witness->value)}};
  } else {
    j["witness"] = nullptr;
  }
  j["certificate"] = report.certificate;
  j["budget"] = nlohmann::json::object();
  for (const auto& [k, v] : report.budget_used) j["budget"][k] = v;
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

ConditionReport check_pos1(const Polynomial& p) {
  require_nonconstant_homogeneous(p, "check_pos1");
  ConditionReport r;
  r.condition = Condition::Pos1;
  nlohmann::json values = nlohmann::json::array();
  for (std::size_t k = 0; k < p.nvars(); ++k) {
    std::vector<Rational> e(p.nvars(), Rational(0));
    e[k] = 1;
    const Rational v = eval_rational(p, e);
    r.budget_used["evaluations"] += 1;
    if (sgn(v) <= 0) {
      r.verdict = Verdict::Fails;
      r.witness = Witness{real_point(e), v};
      return r;
    }
    values.push_back(to_string(v));
  }
  r.verdict = Verdict::Holds;
  r.certificate = {{"values", values}};
  return r;
}

Polynomial facet_derivative(const Polynomial& p, std::size_t k) {
  if (!p.is_homogeneous()) throw DomainError("facet_derivative requires a homogeneous polynomial");
  if (k >= p.nvars()) throw DomainError("facet index " + std::to_string(k + 1) + " out of range");
  if (p.nvars() < 2) throw DomainError("facet_derivative needs at least two variables");
  return substitute(partial_derivative(p, k), k, 0);
}

ConditionReport check_pos2(const Polynomial& p, unsigned polya_budget) {
  Pos2Options opts;
  opts.polya_budget = polya_budget;
  return check_pos2(p, opts);
}

ConditionReport check_pos2(const Polynomial& p, const Pos2Options& opts) {
  require_nonconstant_homogeneous(p, "check_pos2");
  ConditionReport r;
  r.condition = Condition::Pos2;
  const std::size_t n = p.nvars();
  if (n == 1) {
    // F_1 \ {0} is empty.
    r.verdict = Verdict::Holds;
    r.certificate = {{"vacuous", true}};
    r.note = "single variable: the only facet point is the origin";
    return r;
  }
  nlohmann::json exponents = nlohmann::json::object();
  bool inconclusive = false;
  std::vector<std::size_t> unresolved;
  for (std::size_t k = 0; k < n; ++k) {
    const Polynomial g = facet_derivative(p, k);
    const std::string key = "x" + std::to_string(k + 1);
    if (g.is_zero()) {
      std::vector<Rational> x(n, Rational(0));
      x[k == 0 ? 1 : 0] = 1;
      r.verdict = Verdict::Fails;
      r.witness = Witness{real_point(x), 0};
      r.certificate = {{"facet", k + 1}, {"zero_facet_derivative", true}};
      return r;
    }
    const auto exponent = polya_exponent(g, opts.polya_budget);
    r.budget_used["polya_steps"] += exponent ? *exponent + 1 : opts.polya_budget + 1;
    if (exponent) {
      exponents[key] = *exponent;
      continue;
    }
    // Exact sampling of the facet simplex: x_k = 0, remaining coordinates i/G.
    std::optional<Witness> found;
    std::vector<unsigned> cur(n - 1);
    bool stop = false;
    compositions(opts.sample_grid, n - 1, cur, 0,
                 [&](const std::vector<unsigned>& c) {
                   std::vector<Rational> y(n - 1);
                   for (std::size_t i = 0; i < n - 1; ++i) y[i] = Rational(c[i], opts.sample_grid);
                   for (auto& v : y) v.canonicalize();
                   const Rational value = eval_rational(g, y);
                   r.budget_used["facet_samples"] += 1;
                   if (sgn(value) <= 0) {
                     std::vector<Rational> x(n, Rational(0));
                     for (std::size_t i = 0, j = 0; i < n; ++i) {
                       if (i != k) x[i] = y[j++];
                     }
                     found = Witness{real_point(x), value};
                     return false;
                   }
                   return true;
                 },
                 stop);
    if (found) {
      r.verdict = Verdict::Fails;
      r.witness = std::move(found);
      r.certificate = {{"facet", k + 1}, {"zero_facet_derivative", false}};
      return r;
    }
    inconclusive = true;
    unresolved.push_back(k + 1);
  }
  if (inconclusive) {
    r.verdict = Verdict::Inconclusive;
    r.certificate = {{"polya_exponents", exponents}, {"unresolved_facets", unresolved}};
    r.note = "no Polya exponent within budget and no sampled counterexample";
    return r;
  }
  r.verdict = Verdict::Holds;
  r.certificate = {{"polya_exponents", exponents}};
  return r;
}

std::complex<double> assoc_bihom_eval(const Polynomial& p, std::span<const std::complex<double>> z,
                                      std::span<const std::complex<double>> w) {
  if (z.size() != p.nvars() || w.size() != p.nvars()) {
    throw DimensionError("assoc_bihom_eval: point length does not match nvars");
  }
  std::vector<std::complex<double>> x(p.nvars());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = z[i] * std::conj(w[i]);
  return eval_complex(p, x);
}

SgcsResult check_sgcs(const Polynomial& p, std::span<const std::complex<double>> z,
                      std::span<const std::complex<double>> w, double tol) {
  if (z.size() != p.nvars() || w.size() != p.nvars()) {
    throw DimensionError("check_sgcs: point length does not match nvars");
  }
  double zz = 0.0, ww = 0.0;
  std::complex<double> zw = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    zz += std::norm(z[i]);
    ww += std::norm(w[i]);
    zw += z[i] * std::conj(w[i]);
  }
  const double lhs = std::norm(assoc_bihom_eval(p, z, w));
  const double rhs = assoc_bihom_eval(p, z, z).real() * assoc_bihom_eval(p, w, w).real();
  const bool dependent = std::norm(zw) >= (1.0 - tol) * zz * ww;
  if (dependent) {
    return std::abs(lhs - rhs) <= tol * std::max(std::abs(rhs), 1.0) ? SgcsResult::EqualityOnDependent
                                                                      : SgcsResult::Violated;
  }
  return lhs < rhs - tol * std::abs(rhs) ? SgcsResult::StrictHolds : SgcsResult::Violated;
}

bool max_squared_norm_diag(const Polynomial& p) {
  if (!p.is_homogeneous()) throw DomainError("max_squared_norm_diag requires a homogeneous polynomial");
  const auto d = p.degree();
  if (!d) return false;
  for (const auto& basis : monomials_of_degree(*d, p.nvars())) {
    if (sgn(p.coefficient(basis)) <= 0) return false;
  }
  return true;
}

}  // namespace powerpos
