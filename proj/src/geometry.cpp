#include "powerpos/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "powerpos/errors.hpp"
#include "powerpos/smith.hpp"

namespace powerpos {

namespace {

void require_nonzero(const Polynomial& f, const char* op) {
  if (f.is_zero()) throw DomainError(std::string(op) + ": zero polynomial has empty support");
}

IntMatrix difference_matrix(const Polynomial& f) {
  const SupportSet support = log_support(f);
  const MultiIndex& base = support.front();
  IntMatrix m(support.size() - 1, f.nvars());
  for (std::size_t r = 1; r < support.size(); ++r) {
    for (std::size_t c = 0; c < f.nvars(); ++c) {
      m(r - 1, c) = BigInt(static_cast<long>(support[r][c])) - BigInt(static_cast<long>(base[c]));
    }
  }
  return m;
}

}  // namespace

SupportSet log_support(const Polynomial& f) {
  require_nonzero(f, "log_support");
  SupportSet s;
  s.reserve(f.num_terms());
  for (const auto& [e, c] : f.terms()) s.push_back(e);
  return s;
}

std::size_t newton_affine_dim(const Polynomial& f) {
  require_nonzero(f, "newton_affine_dim");
  const IntMatrix d = difference_matrix(f);
  // Rank over Q by Gaussian elimination.
  std::vector<std::vector<Rational>> rows(d.rows(), std::vector<Rational>(d.cols()));
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) rows[i][j] = d(i, j);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < d.cols() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][col]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (sgn(rows[i][col]) == 0) continue;
      const Rational factor = rows[i][col] / rows[rank][col];
      for (std::size_t j = col; j < d.cols(); ++j) rows[i][j] -= factor * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::vector<BigInt> difference_lattice_invariants(const Polynomial& f) {
  require_nonzero(f, "difference_lattice");
  return smith_invariant_factors(difference_matrix(f));
}

bool difference_lattice_is_full(const Polynomial& f) {
  const auto factors = difference_lattice_invariants(f);
  return factors.size() == f.nvars() &&
         std::all_of(factors.begin(), factors.end(), [](const BigInt& d) { return d == 1; });
}

RationalMatrix jf_matrix(const Polynomial& f, std::span<const Rational> s) {
  const std::size_t l = f.nvars();
  if (s.size() != l) throw DimensionError("jf_matrix: point length does not match nvars");
  for (const auto& si : s) {
    if (sgn(si) <= 0) throw DomainError("jf_matrix: point must lie in the open orthant");
  }
  const Rational value = eval_rational(f, s);
  if (sgn(value) <= 0) throw DomainError("jf_matrix: f(s) must be positive");

  std::vector<Polynomial> first;
  std::vector<Rational> grad(l);
  for (std::size_t i = 0; i < l; ++i) {
    first.push_back(partial_derivative(f, i));
    grad[i] = eval_rational(first[i], s) / value;  // d(log f)/ds_i
  }
  RationalMatrix j(l);
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = a; b < l; ++b) {
      const Rational second = eval_rational(partial_derivative(first[a], b), s) / value;
      // d^2 log f = f_ab/f - f_a f_b / f^2
      Rational entry = s[a] * s[b] * (second - grad[a] * grad[b]);
      if (a == b) entry += s[a] * grad[a];
      j(a, b) = entry;
      j(b, a) = entry;
    }
  }
  return j;
}

RealMatrix hessian_logf_fd(const Polynomial& f, std::span<const double> t, double h) {
  const std::size_t l = f.nvars();
  if (t.size() != l) throw DimensionError("hessian_logf_fd: point length does not match nvars");
  if (!(h > 0.0)) throw DomainError("hessian_logf_fd: step must be positive");
  std::vector<double> x(l);
  auto log_f = [&](std::span<const double> tt) {
    for (std::size_t i = 0; i < l; ++i) x[i] = std::exp(tt[i]);
    const double v = eval_double(f, x);
    if (!(v > 0.0)) throw DomainError("hessian_logf_fd: f is not positive on the stencil");
    return std::log(v);
  };
  std::vector<double> tt(t.begin(), t.end());
  RealMatrix hess(l);
  const double center = log_f(tt);
  for (std::size_t i = 0; i < l; ++i) {
    tt[i] = t[i] + h;
    const double plus = log_f(tt);
    tt[i] = t[i] - h;
    const double minus = log_f(tt);
    tt[i] = t[i];
    hess(i, i) = (plus - 2.0 * center + minus) / (h * h);
    for (std::size_t j = i + 1; j < l; ++j) {
      double acc = 0.0;
      for (int si : {1, -1}) {
        for (int sj : {1, -1}) {
          tt[i] = t[i] + si * h;
          tt[j] = t[j] + sj * h;
          acc += si * sj * log_f(tt);
        }
      }
      tt[i] = t[i];
      tt[j] = t[j];
      hess(i, j) = hess(j, i) = acc / (4.0 * h * h);
    }
  }
  return hess;
}

bool is_positive_definite(const RationalMatrix& m) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) != m(j, i)) throw DomainError("is_positive_definite: matrix is not symmetric");
    }
  }
  RationalMatrix a = m;
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;
  // Symmetric pivoting: eliminate the largest remaining diagonal entry.
  for (std::size_t step = 0; step < n; ++step) {
    auto best = std::max_element(active.begin(), active.end(),
                                 [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
    const std::size_t k = *best;
    const Rational pivot = a(k, k);
    if (sgn(pivot) <= 0) return false;
    active.erase(best);
    for (std::size_t i : active) {
      if (sgn(a(i, k)) == 0) continue;
      const Rational l = a(i, k) / pivot;
      for (std::size_t j : active) a(i, j) -= l * a(k, j);
    }
  }
  return true;
}

bool is_positive_definite(const RealMatrix& m, double tol) {
  const std::size_t n = m.dim();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(m(i, j)));
  }
  if (scale == 0.0) return false;
  RealMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tol * scale) {
        throw DomainError("is_positive_definite: matrix is not symmetric within tolerance");
      }
      a(i, j) = 0.5 * (m(i, j) + m(j, i));
    }
  }
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;
  for (std::size_t step = 0; step < n; ++step) {
    auto best = std::max_element(active.begin(), active.end(),
                                 [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
    const std::size_t k = *best;
    const double pivot = a(k, k);
    if (!(pivot > tol * scale)) return false;
    active.erase(best);
    for (std::size_t i : active) {
      const double l = a(i, k) / pivot;
      for (std::size_t j : active) a(i, j) -= l * a(k, j);
    }
  }
  return true;
}

bool amgm_check(const Polynomial& p, std::span<const Rational> x, std::span<const Rational> y,
                double tol) {
  if (x.size() != p.nvars() || y.size() != p.nvars()) {
    throw DimensionError("amgm_check: point length does not match nvars");
  }
  std::vector<double> mid(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) mid[i] = std::sqrt(to_double(x[i]) * to_double(y[i]));
  const double left = std::pow(eval_double(p, mid), 2);
  const double right = to_double(eval_rational(p, x) * eval_rational(p, y));
  return left <= right + tol * std::abs(right);
}

}  // namespace powerpos
