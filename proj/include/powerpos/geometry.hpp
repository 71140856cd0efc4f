#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "powerpos/polynomial.hpp"

namespace powerpos {

/// Square dim x dim matrix, row-major.
template <typename T>
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, T(0)) {}

  static SquareMatrix identity(std::size_t dim) {
    SquareMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

 private:
  std::size_t dim_;
  std::vector<T> data_;
};

using RationalMatrix = SquareMatrix<Rational>;
using RealMatrix = SquareMatrix<double>;

/// The support Log(f): exponents with nonzero coefficient, graded-lex order.
using SupportSet = std::vector<MultiIndex>;

/// Throws DomainError for the zero polynomial.
SupportSet log_support(const Polynomial& f);

/// Rank of {I - I0 : I in Log(f)}, i.e. the affine dimension of the Newton
/// polytope.
std::size_t newton_affine_dim(const Polynomial& f);

/// Invariant factors of the lattice spanned by pairwise support differences.
std::vector<BigInt> difference_lattice_invariants(const Polynomial& f);

/// True iff the pairwise support differences generate Z^l: the Smith form
/// has l invariant factors, all equal to 1.
bool difference_lattice_is_full(const Polynomial& f);

/// J_f(s)_ij = s_i s_j d^2(log f)/ds_i ds_j + delta_ij s_i d(log f)/ds_i,
/// exact. Requires every s_i > 0 and f(s) > 0 (DomainError otherwise).
RationalMatrix jf_matrix(const Polynomial& f, std::span<const Rational> s);

/// Central-difference Hessian of t -> log f(e^t1, ..., e^tl) with step h.
RealMatrix hessian_logf_fd(const Polynomial& f, std::span<const double> t, double h);

/// Exact symmetric-pivoted LDL^T: positive definite iff every pivot is > 0.
/// Throws DomainError if m is not symmetric.
bool is_positive_definite(const RationalMatrix& m);

/// Floating-point variant: symmetrizes when |m - m^T| <= tol * max|m|
/// (DomainError beyond), then requires every LDL^T pivot to exceed
/// tol * max|m|.
bool is_positive_definite(const RealMatrix& m, double tol = 1e-12);

/// p(sqrt(x1 y1), ..., sqrt(xn yn))^2 <= p(x) p(y) + tol * |p(x) p(y)|.
bool amgm_check(const Polynomial& p, std::span<const Rational> x, std::span<const Rational> y,
                double tol = 1e-9);

}  // namespace powerpos
