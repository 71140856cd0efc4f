#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "powerpos/interval.hpp"
#include "powerpos/rational.hpp"

namespace powerpos {

/// Exponent vector I = (I_1, ..., I_n) with cached total degree |I|.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t nvars) : exps_(nvars, 0) {}
  MultiIndex(std::initializer_list<unsigned> exps);
  explicit MultiIndex(std::vector<unsigned> exps);

  std::size_t size() const noexcept { return exps_.size(); }
  unsigned total() const noexcept { return total_; }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  std::span<const unsigned> exponents() const noexcept { return exps_; }

  void set(std::size_t i, unsigned value);

  MultiIndex operator+(const MultiIndex& other) const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.exps_ == b.exps_; }

 private:
  std::vector<unsigned> exps_;
  unsigned total_ = 0;
};

/// Graded-lexicographic order, largest first: higher total degree precedes
/// lower; ties are broken lexicographically with larger exponents first.
/// Iterating a term map yields x1^2, x1*x2, x2^2, x1, x2, 1.
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Exact complex number a + b*i with rational parts.
struct GaussianRational {
  Rational re;
  Rational im;

  Rational norm() const { return re * re + im * im; }
  GaussianRational conj() const { return {re, -im}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator*(const Rational& c, const GaussianRational& a) {
    return {c * a.re, c * a.im};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Sparse multivariate polynomial over the rationals. No stored coefficient
/// is zero. Variables are indexed from 0 in the C++ API; text and JSON forms
/// number them from 1 (x1, x2, ...).
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, Rational, GradedLex>;

  explicit Polynomial(std::size_t nvars);

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t k);
  static Polynomial monomial(const MultiIndex& exps, const Rational& c);
  /// x_1 + ... + x_n
  static Polynomial linear_sum(std::size_t nvars);

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const MultiIndex& exps) const;
  /// Adds c to the coefficient of x^exps, dropping the term if it cancels.
  void add_term(const MultiIndex& exps, const Rational& c);

  /// nullopt is the degree of the zero polynomial (minus infinity).
  std::optional<unsigned> degree() const;
  /// True when every stored term has the same total degree (zero included).
  bool is_homogeneous() const;
  bool is_constant() const;
  /// min over stored coefficients; nullopt for the zero polynomial.
  std::optional<Rational> min_coefficient() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_;
  TermMap terms_;
};

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial mul(const Polynomial& a, const Polynomial& b);
/// a^m; pow(a, 0) is the constant 1.
Polynomial pow(const Polynomial& a, unsigned m);

/// Formal derivative with respect to variable k (0-based).
Polynomial partial_derivative(const Polynomial& p, std::size_t k);

/// Number of monomials of total degree d in n variables, C(d+n-1, n-1).
BigInt monomial_count(unsigned degree, std::size_t nvars);
/// Every exponent vector of total degree d in n variables, graded-lex order.
std::vector<MultiIndex> monomials_of_degree(unsigned degree, std::size_t nvars);

Rational eval_rational(const Polynomial& p, std::span<const Rational> x);
double eval_double(const Polynomial& p, std::span<const double> x);
std::complex<double> eval_complex(const Polynomial& p, std::span<const std::complex<double>> z);
GaussianRational eval_gaussian(const Polynomial& p, std::span<const GaussianRational> z);
/// Encloses the range of p over the box.
Interval eval_interval(const Polynomial& p, std::span<const Interval> box);

/// Substitutes x_{sigma[i]} <- v_i where v = (s_1, ..., s_ell, 0, ..., 0, 1):
/// sigma acts on coordinate positions. Result has ell variables and is in
/// general not homogeneous. sigma is a 0-based permutation of nvars symbols.
Polynomial dehomogenize(const Polynomial& p, std::size_t ell, std::span<const std::size_t> sigma);

/// Re-embeds p in a space with one more variable inserted at position k.
Polynomial insert_variable(const Polynomial& p, std::size_t k);

/// Sets x_k = value and drops that variable.
Polynomial substitute(const Polynomial& p, std::size_t k, const Rational& value);

}  // namespace powerpos
