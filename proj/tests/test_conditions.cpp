#include <gtest/gtest.h>

#include <random>

#include "powerpos/conditions.hpp"
#include "powerpos/errors.hpp"
#include "powerpos/eventual.hpp"
#include "powerpos/parse.hpp"

using namespace powerpos;

namespace {

Pos3Options quick_falsify(std::size_t n) {
  Pos3Options o;
  o.grid = n <= 2 ? 32 : 12;
  return o;
}

}  // namespace

TEST(Pos1, HoldsAndFails) {
  EXPECT_EQ(check_pos1(parse("(x1+x2)^2", 2)).verdict, Verdict::Holds);
  const auto r = check_pos1(parse("(x1+x2+x3)^3 - x1^3", 3));
  EXPECT_EQ(r.verdict, Verdict::Fails);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->value, Rational(0));
  EXPECT_EQ(r.witness->point[0].re, Rational(1));
  EXPECT_EQ(r.witness->point[1].re, Rational(0));
}

TEST(Pos1, RejectsNonHomogeneousAndConstant) {
  EXPECT_THROW(check_pos1(parse("x1^2 + x2", 2)), DomainError);
  EXPECT_THROW(check_pos1(parse("5", 2)), DomainError);
}

TEST(Pos2, FacetDerivative) {
  const Polynomial p = parse("x1^2*(x1+x2+x3) + (x2+x3)^3", 3);
  EXPECT_TRUE(facet_derivative(p, 0).is_zero());
  EXPECT_EQ(facet_derivative(parse("x1*x2 + x2^2", 2), 0), parse("x1", 1));
  EXPECT_THROW(facet_derivative(parse("x1", 1), 0), DomainError);
}

TEST(Pos2, FailsOnFirstFacet) {
  const auto r = check_pos2(parse("x1^2*(x1+x2+x3) + (x2+x3)^3", 3));
  EXPECT_EQ(r.verdict, Verdict::Fails);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->value, Rational(0));
  EXPECT_EQ(r.witness->point[0].re, Rational(0));
  EXPECT_EQ(r.certificate["facet"], 1);
  EXPECT_EQ(r.certificate["zero_facet_derivative"], true);
}

TEST(Pos2, HoldsWithPolyaCertificate) {
  EXPECT_EQ(check_pos2(parse("(x1+x2)^4 - 7*x1^2*x2^2", 2)).verdict, Verdict::Holds);
  EXPECT_EQ(check_pos2(parse("(x1+x2+x3)^2", 3)).verdict, Verdict::Holds);
}

TEST(Pos2, NegativeFacetValue) {
  // d/dx1 at x1 = 0 is x2 - 2 x3, negative at (0, 0, 1).
  const auto r = check_pos2(parse("x1*x2 - 2*x1*x3 + x2^2 + x3^2 + x1^2", 3));
  EXPECT_EQ(r.verdict, Verdict::Fails);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LT(r.witness->value, 0);
}

TEST(Pos3, EqualityWitnessAtMinusOneOne) {
  for (std::size_t n : {2u, 3u}) {
    const Polynomial p = parse(n == 2 ? "(x1+x2)^4 - 8*x1^2*x2^2" : "(x1+x2+x3)^4 - 8*x1^2*x2^2", n);
    const auto r = check_pos3(p, quick_falsify(n));
    EXPECT_EQ(r.verdict, Verdict::Fails);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->point[0], (GaussianRational{-1, 0}));
    EXPECT_EQ(r.witness->point[1], (GaussianRational{1, 0}));
    for (std::size_t k = 2; k < n; ++k) EXPECT_EQ(r.witness->point[k], (GaussianRational{0, 0}));
    EXPECT_EQ(r.witness->value, Rational(0));
    EXPECT_TRUE(revalidate_pos3_witness(p, r.witness->point));
  }
}

TEST(Pos3, RevalidateRejectsAlignedAndStrictPoints) {
  const Polynomial p = parse("(x1+x2)^2", 2);
  const std::vector<GaussianRational> aligned{{1, 1}, {2, 2}};
  EXPECT_FALSE(revalidate_pos3_witness(p, aligned));
  const std::vector<GaussianRational> strict{{1, 0}, {0, 1}};
  EXPECT_FALSE(revalidate_pos3_witness(p, strict));
  // For x1^2 + x2^2, z = (1, i) gives |p(z)| = 0 < 2; but p = x1^2 - x2^2
  // has |p(1, i)| = 2 > p(1, 1) = 0.
  EXPECT_TRUE(revalidate_pos3_witness(parse("x1^2 - x2^2", 2), strict));
}

TEST(Pos3, CertifiesSmallCases) {
  Pos3Options o;
  o.mode = Pos3Mode::Certify;
  o.max_boxes = 200'000;
  EXPECT_EQ(check_pos3(parse("(x1+x2)^4 - 7*x1^2*x2^2", 2), o).verdict, Verdict::Holds);
  EXPECT_EQ(check_pos3(parse("x1^2 + x1*x2 + x2^2", 2), o).verdict, Verdict::Holds);
}

TEST(Pos3, FalsifyFindsNothingWhenConditionHolds) {
  const auto r = check_pos3(parse("(x1+x2)^4 - 7*x1^2*x2^2", 2), quick_falsify(2));
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(Pos3, FalsifyIsDeterministic) {
  const Polynomial p = parse("x1^2*(x1+x2+x3) + (x2+x3)^3", 3);
  Pos3Options o = quick_falsify(3);
  o.threads = 2;
  const auto a = check_pos3(p, o);
  const auto b = check_pos3(p, o);
  EXPECT_EQ(to_json(a), to_json(b));
}

TEST(AssocBihom, DiagonalIsPOfSquaredModuli) {
  const Polynomial p = parse("x1^3 + 2*x1*x2^2 + 3/2*x2^3 + x1^2*x2", 2);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int i = 0; i < 200; ++i) {
    const std::vector<std::complex<double>> z{{g(rng), g(rng)}, {g(rng), g(rng)}};
    const std::complex<double> lhs = assoc_bihom_eval(p, z, z);
    const std::vector<double> sq{std::norm(z[0]), std::norm(z[1])};
    const double rhs = eval_double(p, sq);
    EXPECT_NEAR(lhs.real(), rhs, 1e-9 * std::abs(rhs));
    EXPECT_NEAR(lhs.imag(), 0.0, 1e-9 * std::abs(rhs));
    // Hermitian symmetry: P(w, conj z) = conj P(z, conj w).
    const std::vector<std::complex<double>> w{{g(rng), g(rng)}, {g(rng), g(rng)}};
    const auto zw = assoc_bihom_eval(p, z, w), wz = assoc_bihom_eval(p, w, z);
    EXPECT_NEAR(std::abs(zw - std::conj(wz)), 0.0, 1e-9 * (1.0 + std::abs(zw)));
  }
}

TEST(Sgcs, StrictForPositiveCoefficients) {
  const Polynomial p = parse("(x1+x2)^2", 2);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int i = 0; i < 200; ++i) {
    const std::vector<std::complex<double>> z{{g(rng), g(rng)}, {g(rng), g(rng)}};
    const std::vector<std::complex<double>> w{{g(rng), g(rng)}, {g(rng), g(rng)}};
    EXPECT_EQ(check_sgcs(p, z, w), SgcsResult::StrictHolds);
  }
  const std::vector<std::complex<double>> z{{1, 0}, {0, 1}};
  const std::vector<std::complex<double>> w{{2, 0}, {0, 2}};
  EXPECT_EQ(check_sgcs(p, z, w), SgcsResult::EqualityOnDependent);
}

TEST(Sgcs, ViolatedForIndefiniteForm) {
  const Polynomial p = parse("x1^2 - x1*x2 + x2^2", 2);
  bool violated = false;
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int i = 0; i < 500 && !violated; ++i) {
    const std::vector<std::complex<double>> z{{g(rng), g(rng)}, {g(rng), g(rng)}};
    const std::vector<std::complex<double>> w{{g(rng), g(rng)}, {g(rng), g(rng)}};
    violated = check_sgcs(p, z, w) == SgcsResult::Violated;
  }
  EXPECT_TRUE(violated);
}

TEST(MaxSquaredNormDiag, EquivalentToAllPositive) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 3;
    const unsigned d = 1 + i % 3;
    Polynomial p(n);
    for (const auto& e : monomials_of_degree(d, n)) p.add_term(e, Rational(static_cast<int>(rng() % 5) - 1));
    if (p.is_zero()) continue;
    EXPECT_EQ(max_squared_norm_diag(p), all_coeffs_positive(p));
  }
}

TEST(Verdicts, StringRoundTrip) {
  for (Verdict v : {Verdict::Holds, Verdict::Fails, Verdict::Inconclusive}) {
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
  }
  EXPECT_THROW(verdict_from_string("maybe"), DomainError);
}
