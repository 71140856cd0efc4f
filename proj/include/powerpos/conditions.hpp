#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "powerpos/polynomial.hpp"

namespace powerpos {

enum class Condition { Pos1, Pos2, Pos3 };
enum class Verdict { Holds, Fails, Inconclusive };

std::string to_string(Condition c);
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// A point demonstrating failure. Real witnesses (Pos1, Pos2) have zero
/// imaginary parts. `value` is the exact quantity that should have been
/// positive: p(e_k) for Pos1, dp/dx_k(x) for Pos2, and
/// p(|z|)^2 - |p(z)|^2 for Pos3.
struct Witness {
  std::vector<GaussianRational> point;
  Rational value;
};

struct ConditionReport {
  Condition condition = Condition::Pos1;
  Verdict verdict = Verdict::Inconclusive;
  /// Structured evidence; null when absent.
  nlohmann::json certificate;
  std::optional<Witness> witness;
  /// Search-effort counters.
  std::map<std::string, std::uint64_t> budget_used;
  /// Free-form explanation for Inconclusive and vacuous outcomes.
  std::string note;
};

nlohmann::json to_json(const ConditionReport& report);

/// (Pos1): p(e_k) > 0 for every standard basis vector. Throws DomainError
/// unless p is nonconstant homogeneous.
ConditionReport check_pos1(const Polynomial& p);

/// dp/dx_k restricted to x_k = 0, as a polynomial in the other n-1
/// variables (order preserved). Requires nvars >= 2.
Polynomial facet_derivative(const Polynomial& p, std::size_t k);

struct Pos2Options {
  unsigned polya_budget = 64;
  /// Subdivisions of the facet simplex used for exact sampling.
  unsigned sample_grid = 16;
};

/// (Pos2): certify every facet derivative with a Polya exponent, or refute
/// with an exact nonzero facet point where it is <= 0.
ConditionReport check_pos2(const Polynomial& p, const Pos2Options& opts = {});
ConditionReport check_pos2(const Polynomial& p, unsigned polya_budget);

enum class Pos3Mode { Falsify, Certify };

struct Pos3Options {
  Pos3Mode mode = Pos3Mode::Falsify;
  /// Subdivisions per dimension of the (r, theta) search grid.
  unsigned grid = 32;
  /// Bisection depth limit for the certifying branch-and-bound.
  unsigned max_depth = 24;
  /// Boxes whose alignment defect stays below delta are left to the
  /// positive-definiteness probe.
  double delta = 1e-3;
  /// Grid points with D / p(r)^2 <= tolerance are checked exactly.
  double tolerance = 1e-12;
  std::uint64_t max_boxes = 4'000'000;
  unsigned refine_starts = 8;
  unsigned jf_samples = 16;
  unsigned polya_budget = 64;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// (Pos3): |p(z)| < p(|z_1|, ..., |z_n|) off U(1) * R_+^n.
///
/// The search runs over moduli r on the standard simplex and phases theta
/// with the first coordinate's phase fixed at 0. Falsify mode samples a grid,
/// refines the best candidates, and re-validates candidates in exact
/// arithmetic; without a witness it reports Inconclusive. Certify mode proves
/// D = p(r)^2 - |p(r e^{i theta})|^2 > 0 by interval branch-and-bound outside
/// a delta-neighbourhood of the aligned set, and covers that neighbourhood
/// by sampling positive definiteness of J_f for the dehomogenizations.
ConditionReport check_pos3(const Polynomial& p, const Pos3Options& opts = {});

/// Exact test that z violates (Pos3): z is not aligned and
/// |p(z)| >= p(|z|). Moduli must be rational; otherwise an interval
/// enclosure of the gap must lie strictly below zero.
bool revalidate_pos3_witness(const Polynomial& p, std::span<const GaussianRational> z);

/// P(z, conj(w)) = p(z_1 conj(w_1), ..., z_n conj(w_n)).
std::complex<double> assoc_bihom_eval(const Polynomial& p, std::span<const std::complex<double>> z,
                                      std::span<const std::complex<double>> w);

enum class SgcsResult { StrictHolds, EqualityOnDependent, Violated };
std::string to_string(SgcsResult r);

/// Classifies |P(z,w)|^2 < P(z,z) P(w,w). Pairs with
/// |<z,w>|^2 >= (1 - tol) |z|^2 |w|^2 count as linearly dependent.
SgcsResult check_sgcs(const Polynomial& p, std::span<const std::complex<double>> z,
                      std::span<const std::complex<double>> w, double tol = 1e-9);

/// The coefficient matrix of P in the monomial basis is diag(c_I); this is
/// true iff every diagonal entry, i.e. every degree-d coefficient, is > 0.
bool max_squared_norm_diag(const Polynomial& p);

}  // namespace powerpos
