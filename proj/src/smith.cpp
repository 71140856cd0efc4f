#include "powerpos/smith.hpp"

#include <utility>

namespace powerpos {

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

namespace {

// Moves the smallest nonzero |entry| of the trailing block to (s, s).
bool place_pivot(IntMatrix& m, std::size_t s) {
  std::size_t best_i = 0, best_j = 0;
  bool found = false;
  for (std::size_t i = s; i < m.rows(); ++i) {
    for (std::size_t j = s; j < m.cols(); ++j) {
      if (sgn(m(i, j)) == 0) continue;
      if (!found || mpz_cmpabs(m(i, j).get_mpz_t(), m(best_i, best_j).get_mpz_t()) < 0) {
        best_i = i;
        best_j = j;
        found = true;
      }
    }
  }
  if (!found) return false;
  m.swap_rows(s, best_i);
  m.swap_cols(s, best_j);
  return true;
}

}  // namespace

std::vector<BigInt> smith_invariant_factors(IntMatrix m) {
  std::vector<BigInt> factors;
  const std::size_t limit = std::min(m.rows(), m.cols());
  BigInt q;
  for (std::size_t s = 0; s < limit; ++s) {
    if (!place_pivot(m, s)) break;
    for (;;) {
      bool dirty = false;
      // Clear column s below the pivot.
      for (std::size_t i = s + 1; i < m.rows(); ++i) {
        if (sgn(m(i, s)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), m(i, s).get_mpz_t(), m(s, s).get_mpz_t());
        for (std::size_t j = s; j < m.cols(); ++j) m(i, j) -= q * m(s, j);
        if (sgn(m(i, s)) != 0) dirty = true;
      }
      // Clear row s right of the pivot.
      for (std::size_t j = s + 1; j < m.cols(); ++j) {
        if (sgn(m(s, j)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), m(s, j).get_mpz_t(), m(s, s).get_mpz_t());
        for (std::size_t i = s; i < m.rows(); ++i) m(i, j) -= q * m(i, s);
        if (sgn(m(s, j)) != 0) dirty = true;
      }
      if (dirty) {
        place_pivot(m, s);
        continue;
      }
      // Divisibility: the pivot must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = s + 1; i < m.rows() && divides; ++i) {
        for (std::size_t j = s + 1; j < m.cols(); ++j) {
          if (!mpz_divisible_p(m(i, j).get_mpz_t(), m(s, s).get_mpz_t())) {
            for (std::size_t k = s; k < m.cols(); ++k) m(s, k) += m(i, k);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    factors.push_back(abs(m(s, s)));
  }
  return factors;
}

}  // namespace powerpos
