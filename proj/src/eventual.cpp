#include "powerpos/eventual.hpp"

#include <sstream>

#include "powerpos/errors.hpp"
#include "powerpos/parse.hpp"

namespace powerpos {

bool all_coeffs_positive(const Polynomial& f) {
  if (!f.is_homogeneous()) throw DomainError("all_coeffs_positive requires a homogeneous polynomial");
  const auto d = f.degree();
  if (!d) return false;
  if (monomial_count(*d, f.nvars()) != f.num_terms()) return false;
  for (const auto& [e, c] : f.terms()) {
    if (sgn(c) <= 0) return false;
  }
  return true;
}

PositivityPattern power_scan(const Polynomial& p, const Polynomial& q, unsigned max_m,
                             const ScanOptions& opts) {
  if (p.nvars() != q.nvars()) throw DimensionError("power_scan: p and q have different nvars");
  if (!p.is_homogeneous() || !q.is_homogeneous()) {
    throw DomainError("power_scan requires homogeneous p and q");
  }
  if (p.is_constant()) throw DomainError("power_scan requires a nonconstant p");
  if (q.is_zero()) throw DomainError("power_scan requires a nonzero q");

  const unsigned top_degree = max_m * *p.degree() + *q.degree();
  if (monomial_count(top_degree, p.nvars()) > opts.max_dense_coefficients) {
    throw BudgetError("power_scan: p^" + std::to_string(max_m) + "*q would have more than " +
                      std::to_string(opts.max_dense_coefficients) + " coefficients");
  }

  PositivityPattern pattern;
  pattern.p_id = serialize(p);
  pattern.q_id = serialize(q);
  Polynomial current = q;
  for (unsigned m = 0; m <= max_m; ++m) {
    if (m > 0) current = current * p;
    ScanStep step;
    step.m = m;
    step.all_positive = all_coeffs_positive(current);
    step.num_terms = current.num_terms();
    step.min_coef = current.min_coefficient().value_or(Rational(0));
    // A missing monomial is a zero coefficient.
    if (!current.is_zero() && monomial_count(*current.degree(), current.nvars()) != current.num_terms() &&
        sgn(step.min_coef) > 0) {
      step.min_coef = 0;
    }
    pattern.steps.push_back(step);
    if (step.all_positive && !pattern.first_true) pattern.first_true = m;
  }
  for (unsigned m = max_m + 1; m-- > 0;) {
    if (!pattern.steps[m].all_positive) break;
    pattern.window_onset = m;
  }
  return pattern;
}

std::optional<unsigned> polya_exponent(const Polynomial& g, unsigned max_n) {
  if (!g.is_homogeneous()) throw DomainError("polya_exponent requires a homogeneous polynomial");
  if (g.is_zero()) return std::nullopt;
  const unsigned d = *g.degree();
  // The coefficient of x_j^(d+N) in (sum x)^N * g equals that of x_j^d in g.
  for (std::size_t j = 0; j < g.nvars(); ++j) {
    MultiIndex pure(g.nvars());
    pure.set(j, d);
    if (sgn(g.coefficient(pure)) <= 0) return std::nullopt;
  }
  const Polynomial sum = Polynomial::linear_sum(g.nvars());
  Polynomial current = g;
  for (unsigned n = 0; n <= max_n; ++n) {
    if (n > 0) current = current * sum;
    if (all_coeffs_positive(current)) return n;
  }
  return std::nullopt;
}

nlohmann::json to_json(const PositivityPattern& pattern) {
  nlohmann::json flags = nlohmann::json::array();
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : pattern.steps) {
    flags.push_back(s.all_positive);
    steps.push_back({{"m", s.m},
                     {"all_positive", s.all_positive},
                     {"num_terms", s.num_terms},
                     {"min_coef", to_fraction_string(s.min_coef)}});
  }
  nlohmann::json j = {{"p", pattern.p_id},
                      {"q", pattern.q_id},
                      {"max_m", pattern.max_m()},
                      {"flags", flags},
                      {"steps", steps}};
  j["window_onset"] = pattern.window_onset ? nlohmann::json(*pattern.window_onset) : nlohmann::json();
  j["first_true"] = pattern.first_true ? nlohmann::json(*pattern.first_true) : nlohmann::json();
  return j;
}

std::string to_csv(const PositivityPattern& pattern) {
  std::ostringstream out;
  out << "m,all_positive,num_terms,min_coef\n";
  for (const auto& s : pattern.steps) {
    out << s.m << ',' << (s.all_positive ? "true" : "false") << ',' << s.num_terms << ','
        << to_string(s.min_coef) << '\n';
  }
  return out.str();
}

}  // namespace powerpos
