#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "powerpos/polynomial.hpp"

namespace powerpos {

/// True iff f is homogeneous of some degree d and every one of the
/// C(d+n-1, n-1) monomials of degree d carries a strictly positive
/// coefficient. The zero polynomial has no positive coefficients.
/// Throws DomainError for non-homogeneous f.
bool all_coeffs_positive(const Polynomial& f);

struct ScanStep {
  unsigned m = 0;
  bool all_positive = false;
  std::size_t num_terms = 0;
  Rational min_coef;  // 0 when the product is the zero polynomial
};

/// Which powers m = 0..max_m make p^m * q all-positive.
struct PositivityPattern {
  std::string p_id;
  std::string q_id;
  std::vector<ScanStep> steps;  // steps[m]
  /// Least m with every scanned power from m to max_m all-positive.
  /// Relative to the scanned window only.
  std::optional<unsigned> window_onset;
  std::optional<unsigned> first_true;

  unsigned max_m() const { return steps.empty() ? 0 : static_cast<unsigned>(steps.size() - 1); }
  bool flag(unsigned m) const { return steps.at(m).all_positive; }
};

struct ScanOptions {
  /// Refuse scans whose largest product has more dense coefficients.
  std::size_t max_dense_coefficients = 2'000'000;
};

/// Builds p^m * q for m = 0..max_m by repeated multiplication with p.
/// Throws DomainError on non-homogeneous input or constant p, BudgetError
/// when the dense coefficient count of p^max_m * q exceeds the cap.
PositivityPattern power_scan(const Polynomial& p, const Polynomial& q, unsigned max_m,
                             const ScanOptions& opts = {});

/// Least N <= max_n with (x_1 + ... + x_l)^N * g all-positive, if any.
std::optional<unsigned> polya_exponent(const Polynomial& g, unsigned max_n);

nlohmann::json to_json(const PositivityPattern& pattern);
/// CSV with header m,all_positive,num_terms,min_coef.
std::string to_csv(const PositivityPattern& pattern);

}  // namespace powerpos
