#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "powerpos/errors.hpp"
#include "powerpos/geometry.hpp"
#include "powerpos/parse.hpp"
#include "powerpos/smith.hpp"

using namespace powerpos;

namespace {

/// Random support in dimension l with 2..5 points (at most 4 when l = 1)
/// and exponents in 0..3.
Polynomial random_support(std::mt19937_64& rng, std::size_t l) {
  Polynomial f(l);
  const int points = std::min(2 + static_cast<int>(rng() % 4), l == 1 ? 4 : 5);
  while (static_cast<int>(f.num_terms()) < points) {
    std::vector<unsigned> e(l);
    for (auto& v : e) v = static_cast<unsigned>(rng() % 4);
    f.add_term(MultiIndex(e), Rational(1));
  }
  return f;
}

std::vector<std::vector<int>> differences_from_first(const Polynomial& f) {
  const auto support = log_support(f);
  std::vector<std::vector<int>> gens;
  for (std::size_t k = 1; k < support.size(); ++k) {
    std::vector<int> d(f.nvars());
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] = static_cast<int>(support[k][i]) - static_cast<int>(support[0][i]);
    }
    gens.push_back(d);
  }
  return gens;
}

double max_abs_diff(const RealMatrix& a, const RationalMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - to_double(b(i, j))));
  }
  return m;
}

}  // namespace

TEST(Smith, InvariantFactors) {
  IntMatrix m(2, 2);
  m(0, 0) = 2;
  m(0, 1) = 4;
  m(1, 0) = 6;
  m(1, 1) = 8;
  EXPECT_EQ(smith_invariant_factors(m), (std::vector<BigInt>{2, 4}));
  IntMatrix z(2, 3);
  EXPECT_TRUE(smith_invariant_factors(z).empty());
}

TEST(Support, AffineDimension) {
  EXPECT_EQ(newton_affine_dim(parse("x1^2 + x2^2", 2)), 1u);
  EXPECT_EQ(newton_affine_dim(parse("x1^2 + x1*x2 + x2^2", 2)), 1u);
  EXPECT_EQ(newton_affine_dim(parse("x1 + x2 + 1", 2)), 2u);
  EXPECT_EQ(newton_affine_dim(parse("x1*x2", 2)), 0u);
  EXPECT_THROW(log_support(Polynomial(2)), DomainError);
}

TEST(Lattice, KnownCases) {
  EXPECT_TRUE(difference_lattice_is_full(parse("1 + x1 + x2", 2)));
  EXPECT_FALSE(difference_lattice_is_full(parse("1 + x1^2 + x2^2", 2)));
  EXPECT_EQ(difference_lattice_invariants(parse("1 + x1^2 + x2^2", 2)), (std::vector<BigInt>{2, 2}));
  EXPECT_FALSE(difference_lattice_is_full(parse("1 + x1*x2", 2)));
}

TEST(Lattice, AgreesWithBruteForceAndMinors) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 200; ++i) {
    const std::size_t l = 1 + i % 3;
    const Polynomial f = random_support(rng, l);
    const auto gens = differences_from_first(f);
    const bool full = difference_lattice_is_full(f);
    EXPECT_EQ(full, oracle::lattice_contains_units(gens, l, 20)) << serialize(f);
    EXPECT_EQ(full, oracle::minors_gcd_is_one(gens, l)) << serialize(f);
  }
}

TEST(Jf, ExactMatrixForLinearForm) {
  // For f = 1 + s, J_f(s) = s / (1 + s)^2.
  const Polynomial f = parse("1 + s1", 1);
  const std::vector<Rational> s{Rational(2)};
  EXPECT_EQ(jf_matrix(f, s)(0, 0), Rational(2, 9));
  EXPECT_THROW(jf_matrix(f, std::vector<Rational>{Rational(0)}), DomainError);
  EXPECT_THROW(jf_matrix(parse("s1 - 1", 1), std::vector<Rational>{Rational(1, 2)}), DomainError);
}

TEST(Jf, MatchesFiniteDifferenceHessianWithQuadraticConvergence) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t l = 1 + i % 3;
    Polynomial f = Polynomial::constant(l, Rational(1));
    for (int t = 0; t < 4; ++t) {
      std::vector<unsigned> e(l);
      for (auto& v : e) v = static_cast<unsigned>(rng() % 3);
      f.add_term(MultiIndex(e), Rational(1 + static_cast<int>(rng() % 4)));
    }
    std::vector<Rational> s;
    std::vector<double> t;
    for (std::size_t k = 0; k < l; ++k) {
      s.push_back(rational_near(std::exp(u(rng)), 20));
      t.push_back(std::log(to_double(s.back())));
    }
    const auto jf = jf_matrix(f, s);
    const double e1 = max_abs_diff(hessian_logf_fd(f, t, 1e-2), jf);
    const double e2 = max_abs_diff(hessian_logf_fd(f, t, 1e-3), jf);
    EXPECT_LT(e2, 1e-5);
    if (e1 > 1e-9) {
      EXPECT_GE(std::log10(e1 / e2), 1.5) << serialize(f, 's');
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(PositiveDefinite, ExactAndFloat) {
  RationalMatrix a(2);
  a(0, 0) = 2;
  a(0, 1) = a(1, 0) = 1;
  a(1, 1) = 2;
  EXPECT_TRUE(is_positive_definite(a));
  a(1, 1) = Rational(1, 2);
  EXPECT_FALSE(is_positive_definite(a));
  a(0, 1) = 3;
  EXPECT_THROW(is_positive_definite(a), DomainError);
  // Zero leading pivot needs symmetric pivoting: [[0,1],[1,0]] is indefinite.
  RationalMatrix b(2);
  b(0, 1) = b(1, 0) = 1;
  EXPECT_FALSE(is_positive_definite(b));
  RealMatrix r = RealMatrix::identity(3);
  EXPECT_TRUE(is_positive_definite(r));
  r(2, 2) = -1.0;
  EXPECT_FALSE(is_positive_definite(r));
}

TEST(PositiveDefinite, JfPositiveForFullLatticeSupport) {
  // Full-dimensional support with a full difference lattice gives a
  // positive definite J_f at every positive point.
  const Polynomial f = parse("1 + s1 + s2 + s1*s2^2", 2);
  ASSERT_TRUE(difference_lattice_is_full(f));
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    const std::vector<Rational> s{Rational(1 + static_cast<int>(rng() % 9), 4),
                                  Rational(1 + static_cast<int>(rng() % 9), 4)};
    EXPECT_TRUE(is_positive_definite(jf_matrix(f, s)));
  }
}

TEST(AmGm, HoldsForPositiveCoefficients) {
  const Polynomial p = parse("x1^2 + 3*x1*x2 + x2^2", 2);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::vector<Rational> x{Rational(1 + static_cast<int>(rng() % 20), 7),
                                  Rational(1 + static_cast<int>(rng() % 20), 7)};
    const std::vector<Rational> y{Rational(1 + static_cast<int>(rng() % 20), 5),
                                  Rational(1 + static_cast<int>(rng() % 20), 5)};
    EXPECT_TRUE(amgm_check(p, x, y));
  }
}
