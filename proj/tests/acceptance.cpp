// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "powerpos/conditions.hpp"
#include "powerpos/eventual.hpp"
#include "powerpos/geometry.hpp"
#include "powerpos/parse.hpp"
#include "powerpos/pipeline.hpp"
#include "powerpos/spectral.hpp"

using namespace powerpos;

namespace {

using Clock = std::chrono::steady_clock;

/// Collects failed expectations for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    ok_ = ok_ && ok;
  }
  bool ok() const { return ok_; }
  std::string detail() const {
    std::ostringstream os;
    for (const auto& f : failures_) os << "\n    - " << f;
    return os.str();
  }

 private:
  bool ok_ = true;
  std::vector<std::string> failures_;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool run_criterion(int id, const std::string& title, double limit_s, const std::function<void(Check&)>& body) {
  Check check;
  const auto t0 = Clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.expect(false, std::string("exception: ") + e.what());
  }
  const double elapsed = seconds_since(t0);
  if (limit_s > 0) {
    std::ostringstream os;
    os << "runtime " << elapsed << " s exceeds " << limit_s << " s";
    check.expect(elapsed < limit_s, os.str());
  }
  std::cout << (check.ok() ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << "  (" << elapsed
            << " s)" << check.detail() << std::endl;
  return check.ok();
}

std::string point_text(const std::vector<GaussianRational>& z) {
  std::string s = "(";
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) s += ", ";
    s += to_string(z[i].re);
    if (z[i].im != 0) s += (z[i].im > 0 ? "+" : "") + to_string(z[i].im) + "i";
  }
  return s + ")";
}

bool is_unit_real(const std::vector<GaussianRational>& z, std::size_t k) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] != GaussianRational{Rational(i == k ? 1 : 0), 0}) return false;
  }
  return true;
}

/// Homogeneous form of degree d with every coefficient drawn from 1/4..4.
Polynomial random_positive_form(std::mt19937_64& rng, std::size_t n, unsigned d) {
  std::uniform_int_distribution<int> num(1, 16);
  Polynomial p(n);
  for (const auto& e : monomials_of_degree(d, n)) p.add_term(e, Rational(num(rng), 4));
  return p;
}

/// Homogeneous form with coefficients in -3..3 and a random sparsity.
Polynomial random_form(std::mt19937_64& rng, std::size_t n, unsigned d) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Polynomial p(n);
  for (const auto& e : monomials_of_degree(d, n)) p.add_term(e, Rational(coef(rng)));
  return p;
}

std::vector<Rational> random_positive_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<Rational> x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(rational_near(std::exp(u(rng)), 20));
  return x;
}

Pos3Options falsify_grid_for(std::size_t n) {
  Pos3Options o;
  o.mode = Pos3Mode::Falsify;
  o.grid = n <= 2 ? 32 : (n == 3 ? 12 : 6);
  o.refine_starts = 4;
  return o;
}

void criterion1(Check& c) {
  struct Case {
    std::string expr;
    std::size_t n;
    Condition failing;
  };
  const std::vector<Case> cases{
      {"(x1+x2)^3 - x1^3", 2, Condition::Pos1},
      {"(x1+x2+x3)^3 - x1^3", 3, Condition::Pos1},
      {"x1^2*(x1+x2) + x2^3", 2, Condition::Pos2},
      {"x1^2*(x1+x2+x3) + (x2+x3)^3", 3, Condition::Pos2},
      {"(x1+x2)^4 - 8*x1^2*x2^2", 2, Condition::Pos3},
      {"(x1+x2+x3)^4 - 8*x1^2*x2^2", 3, Condition::Pos3},
  };
  for (const auto& k : cases) {
    const auto t0 = Clock::now();
    const Polynomial p = parse(k.expr, k.n);
    const auto r1 = check_pos1(p);
    const auto r2 = check_pos2(p);
    std::optional<ConditionReport> r3;
    if (k.failing == Condition::Pos3) {
      r3 = check_pos3(p, Pos3Options{});
    } else if (k.n == 2) {
      Pos3Options o;
      o.mode = Pos3Mode::Certify;
      r3 = check_pos3(p, o);
    }
    const double elapsed = seconds_since(t0);
    c.expect(elapsed < 1.0, k.expr + ": took " + std::to_string(elapsed) + " s");
    const auto expect_verdict = [&](const ConditionReport& r, Condition cond) {
      const Verdict want = cond == k.failing ? Verdict::Fails : Verdict::Holds;
      c.expect(r.verdict == want, k.expr + ": " + to_string(cond) + " is " + to_string(r.verdict));
    };
    expect_verdict(r1, Condition::Pos1);
    expect_verdict(r2, Condition::Pos2);
    if (r3) expect_verdict(*r3, Condition::Pos3);

    if (k.failing == Condition::Pos1) {
      c.expect(r1.witness && is_unit_real(r1.witness->point, 0) && r1.witness->value == 0,
               k.expr + ": Pos1 witness is not e1 with value 0");
    } else if (k.failing == Condition::Pos2) {
      c.expect(r2.witness && r2.witness->point[0].re == 0 && r2.witness->value == 0 &&
                   r2.certificate.value("facet", 0) == 1 &&
                   r2.certificate.value("zero_facet_derivative", false),
               k.expr + ": Pos2 failure is not a zero facet derivative on F1");
    } else {
      bool ok = r3->witness && r3->witness->value == 0;
      if (ok) {
        const auto& z = r3->witness->point;
        ok = z[0] == GaussianRational{-1, 0} && z[1] == GaussianRational{1, 0};
        for (std::size_t i = 2; i < z.size(); ++i) ok = ok && z[i] == GaussianRational{0, 0};
        ok = ok && revalidate_pos3_witness(p, z);
      }
      c.expect(ok, k.expr + ": Pos3 witness " + (r3->witness ? point_text(r3->witness->point) : "missing") +
                       " is not the exact equality point (-1, 1, 0, ...)");
    }
  }
}

void criterion2(Check& c) {
  const Polynomial p = parse("(x1+x2)^4 - 7*x1^2*x2^2", 2);
  const auto out = run_check(p, profile_options(BudgetProfile::Default));
  for (const auto& r : out.reports) {
    c.expect(r.verdict == Verdict::Holds, to_string(r.condition) + " is " + to_string(r.verdict));
  }
  const auto pattern = power_scan(p, Polynomial::constant(2, Rational(1)), 60);
  c.expect(pattern.window_onset.has_value(), "no finite window onset up to m = 60");
  c.expect(!pattern.flag(2) && !pattern.flag(3), "m = 2 or m = 3 reported all-positive");

  const auto dp = oracle::from_library(p);
  const auto p2 = oracle::power(dp, 2, 2), p3 = oracle::power(dp, 3, 2);
  c.expect(oracle::coefficient(p2, {5, 3}) == 0, "oracle: x^5 y^3 coefficient of p^2 is not 0");
  c.expect(oracle::coefficient(p3, {6, 6}) == -7, "oracle: x^6 y^6 coefficient of p^3 is not -7");
  c.expect(pow(p, 2).coefficient(MultiIndex{5, 3}) == 0, "library: x^5 y^3 coefficient of p^2 is not 0");
  c.expect(pow(p, 3).coefficient(MultiIndex{6, 6}) == -7, "library: x^6 y^6 coefficient of p^3 is not -7");
  for (unsigned m = 0; m <= 12; ++m) {
    c.expect(pattern.flag(m) == oracle::all_positive(oracle::power(dp, m, 2), 4 * m, 2),
             "scan flag disagrees with the convolution oracle at m = " + std::to_string(m));
  }
  if (pattern.window_onset) {
    std::cout << "    onset for (x1+x2)^4 - 7 x1^2 x2^2: m = " << *pattern.window_onset << '\n';
  }
}

void criterion3(Check& c) {
  const Polynomial p = parse("x1 + x2", 2);
  const Polynomial q = parse("x1^2 - x1*x2 + x2^2", 2);
  const auto pattern = power_scan(p, q, 20);
  c.expect(pattern.window_onset == std::optional<unsigned>(3), "onset is not exactly 3");
  const Polynomial m1 = p * q;
  c.expect(m1 == parse("x1^3 + x2^3", 2) && !pattern.flag(1), "m = 1 does not lack the mixed monomials");
  const Polynomial m2 = pow(p, 2) * q;
  c.expect(m2.coefficient(MultiIndex{2, 2}) == 0 && !pattern.flag(2), "m = 2 x^2 y^2 coefficient is not 0");
  const auto oracle_m2 = oracle::multiply(oracle::power(oracle::from_library(p), 2, 2), oracle::from_library(q));
  c.expect(oracle::coefficient(oracle_m2, {2, 2}) == 0, "oracle: m = 2 x^2 y^2 coefficient is not 0");
  c.expect(pattern.flag(3) && all_coeffs_positive(pow(p, 3) * q), "m = 3 is not all-positive");
}

void criterion4(Check& c) {
  for (std::size_t n : {2u, 3u, 4u}) {
    Polynomial p = pow(Polynomial::linear_sum(n), 4);
    MultiIndex e(n);
    e.set(0, 2);
    e.set(1, 2);
    p.add_term(e, Rational(-8));
    Polynomial pm = Polynomial::constant(n, Rational(1));
    for (unsigned m = 1; m <= 8; ++m) {
      pm = pm * p;
      const auto minc = pm.min_coefficient();
      c.expect(minc && *minc < 0,
               "n = " + std::to_string(n) + ": p^" + std::to_string(m) + " has no negative coefficient");
    }
  }
}

void criterion5(Check& c) {
  std::mt19937_64 rng(20240501);
  std::normal_distribution<double> gauss;

  // P(z, conj z) = p(|z_1|^2, ..., |z_n|^2).
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + i % 4;
    const Polynomial p = random_form(rng, n, 1 + (i / 4) % 5);
    std::vector<std::complex<double>> z;
    std::vector<double> sq;
    for (std::size_t k = 0; k < n; ++k) {
      z.emplace_back(gauss(rng), gauss(rng));
      sq.push_back(std::norm(z.back()));
    }
    const auto lhs = assoc_bihom_eval(p, z, z);
    const double rhs = eval_double(p, sq);
    // Relative to the absolute-value sum so cancellation does not inflate it.
    double scale = 0.0;
    for (const auto& [e, coef] : p.terms()) {
      double m = std::abs(to_double(coef));
      for (std::size_t k = 0; k < n; ++k) m *= std::pow(sq[k], e[k]);
      scale += m;
    }
    if (std::abs(lhs - std::complex<double>(rhs, 0.0)) > 1e-9 * std::max(scale, 1e-300)) ++bad;
  }
  c.expect(bad == 0, "P(z, conj z) identity failed on " + std::to_string(bad) + " of 1000");

  // J_f against the finite-difference Hessian, with second-order convergence.
  int jf_bad = 0, rate_bad = 0, rate_checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t l = 1 + i % 3;
    Polynomial f = Polynomial::constant(l, Rational(1));
    for (int t = 0; t < 3 + i % 3; ++t) {
      std::vector<unsigned> e(l);
      for (auto& v : e) v = static_cast<unsigned>(rng() % 4);
      f.add_term(MultiIndex(e), Rational(1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 3)));
    }
    std::vector<Rational> s = random_positive_point(rng, l);
    std::vector<double> t;
    for (const auto& v : s) t.push_back(std::log(to_double(v)));
    const auto jf = jf_matrix(f, s);
    double e1 = 0.0, e2 = 0.0;
    const auto h1 = hessian_logf_fd(f, t, 1e-2), h2 = hessian_logf_fd(f, t, 1e-3);
    for (std::size_t a = 0; a < l; ++a) {
      for (std::size_t b = 0; b < l; ++b) {
        e1 = std::max(e1, std::abs(h1(a, b) - to_double(jf(a, b))));
        e2 = std::max(e2, std::abs(h2(a, b) - to_double(jf(a, b))));
      }
    }
    if (e2 > 1e-5) ++jf_bad;
    if (e1 > 1e-9) {
      ++rate_checked;
      if (std::log10(e1 / e2) < 1.5) ++rate_bad;
    }
  }
  c.expect(jf_bad == 0, "J_f vs Hessian beyond 1e-5 at h = 1e-3 on " + std::to_string(jf_bad) + " of 1000");
  c.expect(rate_bad == 0, "convergence order below 1.5 decades per decade on " + std::to_string(rate_bad) +
                              " of " + std::to_string(rate_checked));
  c.expect(rate_checked >= 500, "too few instances with measurable truncation error");

  // AM-GM for condition-passing p: all-positive forms, plus
  // negative-coefficient binary forms admitted only once the pipeline
  // certifies all three conditions.
  std::vector<Polynomial> certified{parse("(x1+x2)^4 - 7*x1^2*x2^2", 2), parse("(x1+x2)^6 - 25*x1^3*x2^3", 2)};
  PipelineOptions gate = profile_options(BudgetProfile::Default);
  gate.pos3.max_boxes = 200'000;
  for (int tries = 0; certified.size() < 24 && tries < 200; ++tries) {
    // (x1 + x2)^d - lambda x1^a x2^(d-a) with lambda just above the binomial
    // coefficient, so the form has a negative coefficient.
    const unsigned d = 4 + static_cast<unsigned>(rng() % 3);
    const unsigned a = 1 + static_cast<unsigned>(rng() % (d - 1));
    const Rational binom = pow(Polynomial::linear_sum(2), d).coefficient(MultiIndex{a, d - a});
    const Rational lambda = binom * Rational(64 + 1 + static_cast<int>(rng() % 32), 64);
    Polynomial p = pow(Polynomial::linear_sum(2), d);
    p.add_term(MultiIndex{a, d - a}, -lambda);
    if (run_check(p, gate).exit_code == kExitOk) certified.push_back(p);
  }
  c.expect(certified.size() >= 12, "too few certified negative-coefficient forms");
  std::cout << "    AM-GM pool: " << certified.size() << " certified forms with a negative coefficient\n";
  int amgm_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    Polynomial p(1);
    if (i % 2 == 0) {
      p = certified[static_cast<std::size_t>(i / 2) % certified.size()];
    } else {
      p = random_positive_form(rng, 1 + i % 4, 1 + (i / 8) % 5);
    }
    const auto x = random_positive_point(rng, p.nvars()), y = random_positive_point(rng, p.nvars());
    if (!amgm_check(p, x, y)) ++amgm_bad;
  }
  c.expect(amgm_bad == 0, "AM-GM inequality violated on " + std::to_string(amgm_bad) + " of 1000");

  // All-positive coefficients pass all three checks.
  int allpos_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + i % 3;
    const unsigned d = 1 + static_cast<unsigned>(rng() % 5);
    const Polynomial p = random_positive_form(rng, n, d);
    Pos3Options o = falsify_grid_for(n);
    o.seed = static_cast<std::uint64_t>(i);
    const bool ok = check_pos1(p).verdict == Verdict::Holds && check_pos2(p).verdict == Verdict::Holds &&
                    !check_pos3(p, o).witness.has_value();
    if (!ok) ++allpos_bad;
  }
  c.expect(allpos_bad == 0, "all-positive form failed a check on " + std::to_string(allpos_bad) + " of 1000");
}

void criterion6(Check& c) {
  std::mt19937_64 rng(6060);
  int disagree = 0, full = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t l = 1 + i % 3;
    Polynomial f(l);
    const std::size_t points = 2 + rng() % 4;
    while (f.num_terms() < points) {
      std::vector<unsigned> e(l);
      for (auto& v : e) v = static_cast<unsigned>(rng() % 5);
      f.add_term(MultiIndex(e), Rational(1));
    }
    const auto support = log_support(f);
    std::vector<std::vector<int>> gens;
    for (std::size_t k = 1; k < support.size(); ++k) {
      std::vector<int> d(l);
      for (std::size_t j = 0; j < l; ++j) d[j] = static_cast<int>(support[k][j]) - static_cast<int>(support[0][j]);
      gens.push_back(d);
    }
    const bool lib = difference_lattice_is_full(f);
    full += lib;
    if (lib != oracle::lattice_contains_units(gens, l, 20)) ++disagree;
  }
  c.expect(disagree == 0, std::to_string(disagree) + " of 200 disagree with brute-force membership");
  c.expect(full > 20 && full < 180, "random supports are not a mix of full and non-full lattices");
}

void criterion7(Check& c) {
  auto poly_matrix = [](const std::vector<std::string>& entries) {
    std::vector<Polynomial> v;
    for (const auto& e : entries) v.push_back(parse(e, 2));
    return PolyMatrix(2, std::move(v));
  };
  const auto swap = poly_matrix({"x1", "x2", "x2", "x1"});
  const auto r = verify_beta(swap, parse("x1 + x2", 2), 20, 1e-9);
  c.expect(r.exact_charpoly_zero && r.verdict == BetaVerdict::Verified && r.samples.size() == 20,
           "[[x1,x2],[x2,x1]] with x1+x2 is " + to_string(r.verdict));

  const auto anti = poly_matrix({"0", "x1", "x2", "0"});
  std::mt19937_64 rng(77);
  for (int i = 0; i < 20; ++i) {
    Polynomial p(2);
    p.add_term(MultiIndex{1, 0}, Rational(static_cast<int>(rng() % 7) - 3));
    p.add_term(MultiIndex{0, 1}, Rational(static_cast<int>(rng() % 7) - 3));
    if (p.is_zero()) continue;
    const auto q = verify_beta(anti, p, 5, 1e-9);
    c.expect(!q.exact_charpoly_zero && q.verdict == BetaVerdict::Refuted,
             "[[0,x1],[x2,0]] with " + serialize(p) + " is " + to_string(q.verdict));
  }

  // Round trip: conditions, then power scan, then the 1 x 1
  // certificate matrix (p^m).
  for (const char* expr : {"x1 + x2", "(x1+x2)^4 - 7*x1^2*x2^2"}) {
    const Polynomial p = parse(expr, 2);
    PipelineOptions opts = profile_options(BudgetProfile::Default);
    c.expect(run_check(p, opts).exit_code == kExitOk, std::string(expr) + ": conditions not certified");
    const auto pattern = power_scan(p, Polynomial::constant(2, Rational(1)), 20);
    if (!pattern.window_onset) {
      c.expect(false, std::string(expr) + ": no onset");
      continue;
    }
    const unsigned m = std::max(1u, *pattern.window_onset);
    const Polynomial pm = pow(p, m);
    const auto b = PolyMatrix::single(pm);
    const auto rep = verify_beta(b, pm, 20, 1e-9);
    c.expect(is_irreducible(b) && is_aperiodic(b) && rep.verdict == BetaVerdict::Verified,
             std::string(expr) + ": certificate (p^" + std::to_string(m) + ") not verified");
  }
}

void criterion8(Check& c) {
  std::mt19937_64 rng(8888);
  int disagree = 0, positives = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + i % 4;
    const unsigned d = 1 + static_cast<unsigned>(rng() % 4);
    Polynomial p(n);
    for (const auto& e : monomials_of_degree(d, n)) {
      // Mostly positive so both outcomes are well represented.
      const int roll = static_cast<int>(rng() % 20);
      p.add_term(e, Rational(roll == 0 ? -1 : (roll == 1 ? 0 : roll)));
    }
    if (p.is_zero()) p.add_term(monomials_of_degree(d, n).front(), Rational(1));
    const bool diag = max_squared_norm_diag(p);
    const bool pos = all_coeffs_positive(p);
    const bool ref = oracle::all_positive(oracle::from_library(p), d, n);
    positives += ref;
    if (diag != pos || pos != ref) ++disagree;
  }
  c.expect(disagree == 0, std::to_string(disagree) + " of 500 disagree");
  c.expect(positives > 50 && positives < 450, "random forms are not a mix of both outcomes");
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "independence examples violate exactly their stated condition, exact witnesses", 0,
                      criterion1);
  ok &= run_criterion(2, "(x1+x2)^4 - 7 x1^2 x2^2 passes all conditions; finite onset; m = 2, 3 not positive",
                      10.0, criterion2);
  ok &= run_criterion(3, "Polya classic onset exactly 3", 1.0, criterion3);
  ok &= run_criterion(4, "(x1+...+xn)^4 - 8 x1^2 x2^2: p^m has a negative coefficient for m = 1..8", 5.0,
                      criterion4);
  ok &= run_criterion(5, "identity suites: P(z, conj z), J_f vs Hessian, AM-GM, all-positive forms", 0,
                      criterion5);
  ok &= run_criterion(6, "difference lattice agrees with brute-force membership", 0, criterion6);
  ok &= run_criterion(7, "spectral radius verification and 1 x 1 round trip", 5.0, criterion7);
  ok &= run_criterion(8, "diagonal squared-norm criterion equals all-positive coefficients", 0, criterion8);
  return ok ? 0 : 1;
}
