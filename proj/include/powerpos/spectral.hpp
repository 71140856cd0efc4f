#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "powerpos/polynomial.hpp"

namespace powerpos {

/// Square matrix whose entries are polynomials with nonnegative integer
/// coefficients, i.e. a matrix over Z_+[x_1, ..., x_n].
class PolyMatrix {
 public:
  /// dim x dim zero matrix.
  PolyMatrix(std::size_t dim, std::size_t nvars);
  /// Row-major entries; throws DomainError on a negative or fractional
  /// coefficient and DimensionError on a size or nvars mismatch.
  PolyMatrix(std::size_t dim, std::vector<Polynomial> entries);

  /// The 1 x 1 matrix (p).
  static PolyMatrix single(const Polynomial& p);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, Polynomial value);

 private:
  std::size_t dim_;
  std::size_t nvars_;
  std::vector<Polynomial> entries_;
};

/// {"dim": k, "nvars": n, "entries": [["expr", ...], ...]}. Throws
/// ParseError on malformed input or coefficients outside Z_+.
PolyMatrix polymatrix_from_json(const nlohmann::json& j);

/// Support digraph: edge i -> j iff A_ij is a nonzero polynomial.
std::vector<std::vector<std::size_t>> support_digraph(const PolyMatrix& a);

/// Every ordered pair (i, j) is joined by a walk of length >= 1.
bool is_irreducible(const PolyMatrix& a);

/// Closed-walk lengths through every node have gcd 1.
bool is_aperiodic(const PolyMatrix& a);

struct PerronResult {
  double value = 0.0;
  /// Collatz-Wielandt bracket: lower <= beta <= upper.
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> vector;
  unsigned iterations = 0;
};

/// Power iteration on A(x) + I, stopping once the Collatz-Wielandt bracket
/// for the spectral radius of A(x) is narrower than tol * max(1, upper).
/// Throws DomainError unless x is strictly positive; BudgetError when the
/// bracket has not closed after max_iterations.
PerronResult perron(const PolyMatrix& a, std::span<const Rational> x, double tol,
                    unsigned max_iterations = 200000);

/// Spectral radius of A(x).
double beta_at(const PolyMatrix& a, std::span<const Rational> x, double tol);

/// det(p I - A), expanded exactly. Refuses dim > 8 with BudgetError.
Polynomial charpoly_residual(const PolyMatrix& a, const Polynomial& p);

enum class BetaVerdict { Verified, Refuted, Inconclusive };
std::string to_string(BetaVerdict v);

struct BetaSample {
  std::vector<Rational> point;
  double p_value = 0.0;
  double perron_value = 0.0;
  double gap_to_second_modulus = 0.0;
};

struct BetaReport {
  bool exact_charpoly_zero = false;
  std::vector<BetaSample> samples;
  BetaVerdict verdict = BetaVerdict::Inconclusive;
  bool irreducible = false;
  bool aperiodic = false;
  /// p has integer coefficients, as the characterization over Z requires.
  bool integral_target = false;
  std::string note;
};

/// Verified iff det(p I - A) vanishes identically and p(x) matches the
/// Perron root at every sample point within tol * (1 + |p(x)|).
BetaReport verify_beta(const PolyMatrix& a, const Polynomial& p, unsigned sample_count, double tol,
                       std::uint64_t seed = 0);

nlohmann::json to_json(const BetaReport& report);

}  // namespace powerpos
