#pragma once

#include <cstddef>
#include <vector>

#include "powerpos/rational.hpp"

namespace powerpos {

/// Dense rows x cols integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<BigInt> data_;
};

/// Nonzero invariant factors d_1 | d_2 | ... | d_r (all positive) of the
/// Smith normal form of m; r is the rank. Row and column reduction with
/// Euclidean steps over arbitrary-precision integers.
std::vector<BigInt> smith_invariant_factors(IntMatrix m);

}  // namespace powerpos
