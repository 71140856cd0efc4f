// Pos3 search and certification on the normalized domain
//   r in the standard simplex, theta_first = 0,
// where D(r, theta) = p(r)^2 - |p(r e^{i theta})|^2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <thread>

#include "powerpos/conditions.hpp"
#include "powerpos/errors.hpp"
#include "powerpos/eventual.hpp"
#include "powerpos/geometry.hpp"

namespace powerpos {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct DoubleTerm {
  double coef;
  std::vector<unsigned> exps;
};

class Evaluator {
 public:
  explicit Evaluator(const Polynomial& p) : n_(p.nvars()) {
    for (const auto& [e, c] : p.terms()) {
      terms_.push_back({to_double(c), std::vector<unsigned>(e.exponents().begin(), e.exponents().end())});
    }
  }

  std::size_t nvars() const { return n_; }

  double real(std::span<const double> r) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
      double v = t.coef;
      for (std::size_t i = 0; i < n_; ++i) {
        for (unsigned k = 0; k < t.exps[i]; ++k) v *= r[i];
      }
      sum += v;
    }
    return sum;
  }

  std::complex<double> phased(std::span<const double> r, std::span<const double> theta) const {
    std::complex<double> sum = 0.0;
    for (const auto& t : terms_) {
      double mag = t.coef;
      double angle = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        for (unsigned k = 0; k < t.exps[i]; ++k) mag *= r[i];
        angle += t.exps[i] * theta[i];
      }
      sum += std::polar(1.0, angle) * mag;
    }
    return sum;
  }

 private:
  std::size_t n_;
  std::vector<DoubleTerm> terms_;
};

double alignment_defect(std::span<const double> r, std::span<const double> theta) {
  double a = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    for (std::size_t k = j + 1; k < r.size(); ++k) a += r[j] * r[k] * (1.0 - std::cos(theta[j] - theta[k]));
  }
  return a;
}

struct Probe {
  double objective = kInf;  // D / (p(r)^2 * defect); <= 0 signals a violation
  double gap_ratio = kInf;  // D / p(r)^2
};

Probe probe(const Evaluator& ev, std::span<const double> r, std::span<const double> theta) {
  Probe out;
  const double defect = alignment_defect(r, theta);
  if (!(defect > 0.0)) return out;
  const double pr = ev.real(r);
  if (!(pr > 0.0)) {
    out.objective = -kInf;
    out.gap_ratio = -kInf;
    return out;
  }
  const double d = pr * pr - std::norm(ev.phased(r, theta));
  out.gap_ratio = d / (pr * pr);
  out.objective = out.gap_ratio / defect;
  return out;
}

// Pythagorean parametrization: a rational point on the unit circle.
GaussianRational unit_from_tangent(const Rational& t) {
  const Rational t2 = t * t;
  const Rational den = 1 + t2;
  return {Rational((1 - t2) / den), Rational(2 * t / den)};
}

GaussianRational unit_from_angle(double theta) {
  theta = std::remainder(theta, kTwoPi);
  constexpr double eps = 1e-12;
  const double half_pi = std::numbers::pi / 2;
  if (std::abs(theta) < eps) return {1, 0};
  if (std::abs(theta - half_pi) < eps) return {0, 1};
  if (std::abs(theta + half_pi) < eps) return {0, -1};
  if (std::numbers::pi - std::abs(theta) < eps) return {-1, 0};
  if (std::abs(theta) <= half_pi) return unit_from_tangent(rational_near(std::tan(theta / 2), 20));
  const double shifted = theta > 0 ? theta - std::numbers::pi : theta + std::numbers::pi;
  const GaussianRational u = unit_from_tangent(rational_near(std::tan(shifted / 2), 20));
  return {-u.re, -u.im};
}

bool is_aligned(std::span<const GaussianRational> z) {
  const GaussianRational* anchor = nullptr;
  for (const auto& c : z) {
    if (sgn(c.re) == 0 && sgn(c.im) == 0) continue;
    if (!anchor) {
      anchor = &c;
      continue;
    }
    // z_j * conj(anchor) must be a positive real.
    const GaussianRational prod = c * anchor->conj();
    if (sgn(prod.im) != 0 || sgn(prod.re) <= 0) return false;
  }
  return true;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return std::nullopt;
  }
  Rational root;
  mpz_sqrt(root.get_num_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(root.get_den_mpz_t(), q.get_den_mpz_t());
  root.canonicalize();
  return root;
}

// Exact check of the floating-point candidate (r, theta). On success the
// witness is scaled so the moduli are coprime integers and rotated so the
// last nonzero coordinate is a positive real.
std::optional<Witness> exact_witness(const Polynomial& p, std::span<const double> r,
                                     std::span<const double> theta) {
  const std::size_t n = p.nvars();
  double total = 0.0;
  for (double v : r) total += std::max(v, 0.0);
  if (!(total > 0.0)) return std::nullopt;
  std::vector<Rational> moduli(n);
  std::vector<GaussianRational> units(n);
  for (std::size_t i = 0; i < n; ++i) {
    moduli[i] = r[i] > 0.0 ? rational_near(r[i] / total, 20) : Rational(0);
    if (sgn(moduli[i]) < 0) moduli[i] = 0;
    units[i] = sgn(moduli[i]) == 0 ? GaussianRational{1, 0} : unit_from_angle(theta[i]);
  }
  BigInt den_lcm = 1, num_gcd = 0;
  std::size_t last = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(moduli[i]) == 0) continue;
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), moduli[i].get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), moduli[i].get_num_mpz_t());
    last = i;
  }
  if (last == n) return std::nullopt;
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  const GaussianRational rotate = units[last].conj();
  std::vector<GaussianRational> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    moduli[i] *= scale;
    z[i] = moduli[i] * (units[i] * rotate);
  }
  if (is_aligned(z)) return std::nullopt;
  const Rational pr = eval_rational(p, moduli);
  const Rational pz = eval_gaussian(p, z).norm();
  const Rational gap = pr * pr - pz;
  if (sgn(pr) > 0 && sgn(gap) > 0) return std::nullopt;
  return Witness{std::move(z), gap};
}

// Compositions of `total` into `parts` parts, as simplex points.
std::vector<std::vector<double>> simplex_grid(unsigned total, std::size_t parts) {
  std::vector<std::vector<double>> out;
  std::vector<unsigned> cur(parts, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned rem) {
    if (pos + 1 == parts) {
      cur[pos] = rem;
      std::vector<double> pt(parts);
      for (std::size_t i = 0; i < parts; ++i) pt[i] = static_cast<double>(cur[i]) / total;
      out.push_back(std::move(pt));
      return;
    }
    for (unsigned e = 0; e <= rem; ++e) {
      cur[pos] = e;
      rec(pos + 1, rem - e);
    }
  };
  rec(0, total);
  return out;
}

struct Candidate {
  Probe probe;
  std::uint64_t index = 0;
  std::vector<double> r;
  std::vector<double> theta;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.probe.objective != b.probe.objective) return a.probe.objective < b.probe.objective;
  return a.index < b.index;
}

struct SweepResult {
  std::vector<Candidate> best;   // smallest objective first
  std::vector<Candidate> tight;  // gap ratio <= tolerance, enumeration order
  std::uint64_t evaluations = 0;
};

constexpr std::size_t kMaxTight = 64;

void keep_best(std::vector<Candidate>& best, Candidate c, std::size_t k) {
  if (best.size() < k) {
    best.push_back(std::move(c));
    std::sort(best.begin(), best.end(), better);
  } else if (better(c, best.back())) {
    best.back() = std::move(c);
    std::sort(best.begin(), best.end(), better);
  }
}

SweepResult sweep(const Evaluator& ev, const std::vector<std::vector<double>>& radii, unsigned grid,
                  std::size_t keep, double tolerance, std::size_t begin, std::size_t stride) {
  const std::size_t n = ev.nvars();
  SweepResult res;
  std::vector<double> theta(n);
  std::vector<unsigned> digits;
  for (std::size_t ri = begin; ri < radii.size(); ri += stride) {
    const auto& r = radii[ri];
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < n; ++i) {
      if (r[i] > 0.0) nz.push_back(i);
    }
    if (nz.size() < 2) continue;
    // Phase of the first nonzero coordinate is fixed at 0; the others range
    // over the grid. Conjugation symmetry halves the first free phase.
    const std::size_t free = nz.size() - 1;
    digits.assign(free, 0);
    std::uint64_t local = 0;
    for (;;) {
      std::fill(theta.begin(), theta.end(), 0.0);
      for (std::size_t f = 0; f < free; ++f) theta[nz[f + 1]] = kTwoPi * digits[f] / grid;
      const Probe pr = probe(ev, r, theta);
      ++res.evaluations;
      if (std::isfinite(pr.objective) || pr.objective < 0) {
        const std::uint64_t index = (static_cast<std::uint64_t>(ri) << 32) + local;
        Candidate c{pr, index, r, theta};
        if (pr.gap_ratio <= tolerance && res.tight.size() < kMaxTight) res.tight.push_back(c);
        keep_best(res.best, std::move(c), keep);
      }
      ++local;
      std::size_t f = 0;
      for (; f < free; ++f) {
        const unsigned limit = f == 0 ? grid / 2 + 1 : grid;
        if (++digits[f] < limit) break;
        digits[f] = 0;
      }
      if (f == free) break;
    }
  }
  return res;
}

// Coordinate pattern search on the objective, starting from a grid point.
Candidate refine(const Evaluator& ev, Candidate start, unsigned grid, std::uint64_t& evaluations) {
  const std::size_t n = ev.nvars();
  std::size_t fixed_phase = 0;
  while (fixed_phase < n && !(start.r[fixed_phase] > 0.0)) ++fixed_phase;
  double step_r = 1.0 / grid;
  double step_t = kTwoPi / grid;
  Candidate cur = std::move(start);
  auto normalized = [&](std::vector<double> r) {
    double s = 0.0;
    for (double& v : r) {
      v = std::max(v, 0.0);
      s += v;
    }
    if (s > 0.0) {
      for (double& v : r) v /= s;
    }
    return r;
  };
  for (int iter = 0; iter < 400 && step_t > 1e-10; ++iter) {
    bool improved = false;
    for (std::size_t i = 0; i < 2 * n; ++i) {
      const bool is_r = i < n;
      const std::size_t idx = is_r ? i : i - n;
      if (!is_r && idx == fixed_phase) continue;
      for (double sign : {1.0, -1.0}) {
        Candidate trial = cur;
        if (is_r) {
          trial.r[idx] += sign * step_r;
          trial.r = normalized(trial.r);
        } else {
          trial.theta[idx] += sign * step_t;
        }
        trial.probe = probe(ev, trial.r, trial.theta);
        ++evaluations;
        if (trial.probe.objective < cur.probe.objective) {
          cur = std::move(trial);
          improved = true;
        }
      }
    }
    if (!improved) {
      step_r *= 0.5;
      step_t *= 0.5;
    }
    if (cur.probe.objective <= 0.0) break;
  }
  return cur;
}

ConditionReport falsify(const Polynomial& p, const Pos3Options& opts) {
  ConditionReport rep;
  rep.condition = Condition::Pos3;
  const Evaluator ev(p);
  const unsigned grid = std::max(opts.grid, 2u);
  const auto radii = simplex_grid(grid, p.nvars());
  const unsigned threads = std::max(opts.threads, 1u);

  std::vector<SweepResult> parts(threads);
  if (threads == 1) {
    parts[0] = sweep(ev, radii, grid, opts.refine_starts, opts.tolerance, 0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] { parts[t] = sweep(ev, radii, grid, opts.refine_starts, opts.tolerance, t, threads); });
    }
    for (auto& th : pool) th.join();
  }
  SweepResult merged;
  for (auto& part : parts) {
    merged.evaluations += part.evaluations;
    for (auto& c : part.best) keep_best(merged.best, std::move(c), opts.refine_starts);
    for (auto& c : part.tight) merged.tight.push_back(std::move(c));
  }
  std::sort(merged.tight.begin(), merged.tight.end(),
            [](const Candidate& a, const Candidate& b) { return a.index < b.index; });
  if (merged.tight.size() > kMaxTight) merged.tight.resize(kMaxTight);
  rep.budget_used["grid_evaluations"] = merged.evaluations;

  std::uint64_t exact_checks = 0;
  auto try_exact = [&](const Candidate& c) {
    ++exact_checks;
    return exact_witness(p, c.r, c.theta);
  };
  auto fail_with = [&](Witness w, const char* stage) {
    rep.verdict = Verdict::Fails;
    rep.witness = std::move(w);
    rep.certificate = {{"mode", "Falsify"}, {"stage", stage}, {"equality", sgn(rep.witness->value) == 0}};
    rep.budget_used["exact_checks"] = exact_checks;
  };

  for (const auto& c : merged.tight) {
    if (auto w = try_exact(c)) {
      fail_with(std::move(*w), "grid");
      return rep;
    }
  }
  std::uint64_t refine_evals = 0;
  double min_objective = merged.best.empty() ? kInf : merged.best.front().probe.objective;
  for (const auto& start : merged.best) {
    if (auto w = try_exact(start)) {
      fail_with(std::move(*w), "grid");
      rep.budget_used["refine_evaluations"] = refine_evals;
      return rep;
    }
    const Candidate refined = refine(ev, start, grid, refine_evals);
    min_objective = std::min(min_objective, refined.probe.objective);
    if (refined.probe.gap_ratio <= std::max(opts.tolerance, 1e-9)) {
      if (auto w = try_exact(refined)) {
        fail_with(std::move(*w), "refinement");
        rep.budget_used["refine_evaluations"] = refine_evals;
        return rep;
      }
    }
  }
  rep.budget_used["refine_evaluations"] = refine_evals;
  rep.budget_used["exact_checks"] = exact_checks;
  rep.verdict = Verdict::Inconclusive;
  rep.certificate = {{"mode", "Falsify"},
                     {"counterexample_found", false},
                     {"grid", grid},
                     {"min_normalized_gap", std::isfinite(min_objective) ? nlohmann::json(min_objective)
                                                                         : nlohmann::json()}};
  rep.note = "no counterexample found on the search grid";
  return rep;
}

// ---------------------------------------------------------------------------
// Certification

struct TermPair {
  Interval coef;                                    // 4 c_I c_J
  std::vector<std::pair<unsigned, unsigned>> sum;   // nonzero (i, (I + J)_i)
  std::vector<std::pair<unsigned, double>> diff;    // nonzero (i, (I - J)_i), i >= 1
};

// A box in the chart r_chart = 1 (the chart of points whose largest modulus
// sits at `chart`): sides are the other n-1 moduli in [0, 1], then the
// phases theta_1 .. theta_{n-1}, with theta_0 = 0.
struct Box {
  std::size_t chart = 0;
  std::vector<Interval> sides;
  std::vector<unsigned> splits;  // bisections per side
  unsigned depth = 0;            // max over splits
};

class Certifier {
  static constexpr std::size_t kNoSide = static_cast<std::size_t>(-1);

 public:
  explicit Certifier(const Polynomial& p) : n_(p.nvars()) {
    std::vector<std::pair<MultiIndex, Rational>> terms(p.terms().begin(), p.terms().end());
    for (const auto& [e, c] : terms) {
      std::vector<std::pair<unsigned, unsigned>> exps;
      for (unsigned i = 0; i < n_; ++i) {
        if (e[i] != 0) exps.emplace_back(i, e[i]);
      }
      terms_.emplace_back(Interval::enclose(c), std::move(exps));
    }
    for (std::size_t a = 0; a < terms.size(); ++a) {
      for (std::size_t b = a + 1; b < terms.size(); ++b) {
        TermPair tp{Interval::enclose(4 * terms[a].second * terms[b].second), {}, {}};
        for (unsigned i = 0; i < n_; ++i) {
          const unsigned sum = terms[a].first[i] + terms[b].first[i];
          const int diff = static_cast<int>(terms[a].first[i]) - static_cast<int>(terms[b].first[i]);
          if (sum != 0) tp.sum.emplace_back(i, sum);
          if (diff != 0 && i != 0) tp.diff.emplace_back(i, static_cast<double>(diff));
          max_exp_ = std::max(max_exp_, sum);
        }
        pairs_.push_back(std::move(tp));
      }
    }
  }

  std::size_t nvars() const { return n_; }

  Box root(std::size_t chart, bool first_phase_half) const {
    Box b;
    b.chart = chart;
    b.sides.assign(n_ - 1, Interval(0.0, 1.0));
    for (std::size_t i = 1; i < n_; ++i) {
      b.sides.push_back(i == 1 && first_phase_half ? Interval(0.0, std::numbers::pi)
                                                   : Interval(-std::numbers::pi, std::numbers::pi));
    }
    b.splits.assign(b.sides.size(), 0);
    return b;
  }

  /// Full coordinate index of a modulus side.
  std::size_t modulus_index(const Box& b, std::size_t side) const { return side < b.chart ? side : side + 1; }

  struct Point {
    std::vector<Interval> r, theta;
  };

  Point expand(const Box& b) const {
    Point pt;
    for (std::size_t i = 0, s = 0; i < n_; ++i) pt.r.push_back(i == b.chart ? Interval(1.0) : b.sides[s++]);
    pt.theta.push_back(Interval(0.0));
    for (std::size_t i = 1; i < n_; ++i) pt.theta.push_back(b.sides[n_ - 2 + i]);
    return pt;
  }

  /// D = sum over pairs of 4 c_I c_J r^{I+J} sin^2(<I-J, theta>/2), and
  /// optionally its gradient along the box sides.
  Interval gap(const Box& b, std::vector<Interval>* grad) const {
    const Point pt = expand(b);
    const auto powers = power_table(pt.r);
    // Side of each modulus coordinate; the chart coordinate has none.
    std::vector<std::size_t> side_of(n_, kNoSide);
    for (std::size_t side = 0; side + 1 < n_; ++side) side_of[modulus_index(b, side)] = side;
    if (grad) grad->assign(b.sides.size(), Interval(0.0));
    Interval total(0.0);
    std::vector<Interval> prefix;
    for (const auto& tp : pairs_) {
      Interval angle(0.0);
      for (const auto& [i, d] : tp.diff) angle += Interval(d) * pt.theta[i];
      const Interval s2 = sin_squared(Interval(0.5) * angle);
      // prefix[k] = coef * product of the first k power factors.
      prefix.assign(1, tp.coef);
      for (const auto& [i, e] : tp.sum) prefix.push_back(prefix.back() * powers[i][e]);
      const Interval& mono = prefix.back();
      total += mono * s2;
      if (!grad) continue;
      // d/dr_j: S_j r_j^{S_j - 1} times the remaining factors.
      Interval suffix(1.0);
      for (std::size_t k = tp.sum.size(); k-- > 0;) {
        const auto [j, e] = tp.sum[k];
        if (side_of[j] != kNoSide) {
          const Interval d = prefix[k] * suffix * Interval(static_cast<double>(e)) * powers[j][e - 1];
          (*grad)[side_of[j]] += d * s2;
        }
        suffix *= powers[j][e];
      }
      // d/dtheta_i: r^S (diff_i / 2) sin(angle).
      if (tp.diff.empty()) continue;
      const Interval half_sin = Interval(0.5) * mono * sin(angle);
      for (const auto& [i, d] : tp.diff) (*grad)[n_ - 2 + i] += half_sin * Interval(d);
    }
    return total;
  }

  /// Lower bound for D over the box: sides along which D is monotone are
  /// collapsed to the minimizing end, then the better of the natural and
  /// mean-value enclosures is taken.
  double gap_lower(const Box& b, std::vector<Interval>& grad, Interval& natural) const {
    natural = gap(b, &grad);
    Box reduced = b;
    bool collapsed = false;
    for (std::size_t i = 0; i < b.sides.size(); ++i) {
      if (b.sides[i].width() == 0.0) continue;
      if (grad[i].lo() >= 0.0) {
        reduced.sides[i] = Interval(b.sides[i].lo());
        collapsed = true;
      } else if (grad[i].hi() <= 0.0) {
        reduced.sides[i] = Interval(b.sides[i].hi());
        collapsed = true;
      }
    }
    std::vector<Interval> rgrad = grad;
    Interval rnat = natural;
    if (collapsed) rnat = gap(reduced, &rgrad);
    Box center = reduced;
    for (auto& side : center.sides) side = Interval(side.mid());
    Interval mv = gap(center, nullptr);
    for (std::size_t i = 0; i < reduced.sides.size(); ++i) {
      mv += rgrad[i] * (reduced.sides[i] - Interval(reduced.sides[i].mid()));
    }
    return std::max(rnat.lo(), mv.lo());
  }

  /// A = sum_{j<k} 2 r_j r_k sin^2((theta_j - theta_k)/2); zero exactly on
  /// the aligned set. Optionally with its gradient along the box sides.
  Interval defect(const Box& b, std::vector<Interval>* grad = nullptr) const {
    const Point pt = expand(b);
    std::vector<std::size_t> side_of(n_, kNoSide);
    for (std::size_t side = 0; side + 1 < n_; ++side) side_of[modulus_index(b, side)] = side;
    if (grad) grad->assign(b.sides.size(), Interval(0.0));
    Interval a(0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = j + 1; k < n_; ++k) {
        const Interval diff = pt.theta[j] - pt.theta[k];
        const Interval s2 = sin_squared(Interval(0.5) * diff);
        a += Interval(2.0) * pt.r[j] * pt.r[k] * s2;
        if (!grad) continue;
        if (side_of[j] != kNoSide) (*grad)[side_of[j]] += Interval(2.0) * pt.r[k] * s2;
        if (side_of[k] != kNoSide) (*grad)[side_of[k]] += Interval(2.0) * pt.r[j] * s2;
        const Interval ds = pt.r[j] * pt.r[k] * sin(diff);  // d/dtheta_j; negated for theta_k
        if (j >= 1) (*grad)[n_ - 2 + j] += ds;
        if (k >= 1) (*grad)[n_ - 2 + k] -= ds;
      }
    }
    return a;
  }

  /// Encloses p(r) over the moduli of the box.
  Interval modulus_value(const Box& b) const {
    const Point pt = expand(b);
    const auto powers = power_table(pt.r);
    Interval total(0.0);
    for (const auto& [coef, exps] : terms_) {
      Interval v = coef;
      for (const auto& [i, e] : exps) v *= powers[i][e];
      total += v;
    }
    return total;
  }

  void center(const Box& b, std::vector<double>& r, std::vector<double>& theta) const {
    const Point pt = expand(b);
    r.clear();
    theta.clear();
    for (const auto& v : pt.r) r.push_back(v.mid());
    for (const auto& v : pt.theta) theta.push_back(v.mid());
  }

 private:
  std::vector<std::vector<Interval>> power_table(const std::vector<Interval>& r) const {
    std::vector<std::vector<Interval>> powers(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      powers[i].push_back(Interval(1.0));
      for (unsigned k = 1; k <= max_exp_; ++k) powers[i].push_back(pow(r[i], k));
    }
    return powers;
  }

  std::size_t n_;
  unsigned max_exp_ = 0;
  std::vector<std::pair<Interval, std::vector<std::pair<unsigned, unsigned>>>> terms_;
  std::vector<TermPair> pairs_;
};

// Proves p > 0 on the simplex by bisection on p's interval enclosure.
bool simplex_positive(const Polynomial& p, unsigned max_depth, std::uint64_t& boxes) {
  const std::size_t n = p.nvars();
  std::vector<std::pair<std::vector<Interval>, unsigned>> stack;
  stack.push_back({std::vector<Interval>(n - 1, Interval(0.0, 1.0)), 0});
  while (!stack.empty()) {
    auto [rb, depth] = std::move(stack.back());
    stack.pop_back();
    ++boxes;
    Interval sum(0.0);
    for (const auto& v : rb) sum += v;
    Interval last = Interval(1.0) - sum;
    if (last.hi() < 0.0) continue;
    std::vector<Interval> full = rb;
    full.push_back(Interval(std::max(0.0, last.lo()), last.hi()));
    if (eval_interval(p, full).lo() > 0.0) continue;
    if (depth >= max_depth || n == 1) return false;
    std::size_t widest = 0;
    for (std::size_t i = 1; i < rb.size(); ++i) {
      if (rb[i].width() > rb[widest].width()) widest = i;
    }
    auto lo = rb, hi = rb;
    const double mid = rb[widest].mid();
    lo[widest] = Interval(rb[widest].lo(), mid);
    hi[widest] = Interval(mid, rb[widest].hi());
    stack.push_back({std::move(hi), depth + 1});
    stack.push_back({std::move(lo), depth + 1});
  }
  return true;
}

double magnitude(const Interval& x) { return std::max(std::abs(x.lo()), std::abs(x.hi())); }

// Among sides still below the depth limit, the one with the largest share
// of the mean-value smear width * |gradient|, summing the shares for D and
// for the alignment defect: a box closes once D is bounded away from 0 or
// the defect drops below delta, and near faces only the latter is driven by
// the moduli. The widest side when both are flat.
std::optional<std::size_t> split_side(const Box& box, const std::vector<Interval>& gap_grad,
                                      const std::vector<Interval>& defect_grad, unsigned max_depth) {
  const std::size_t sides = box.sides.size();
  std::vector<double> smear_d(sides, 0.0), smear_a(sides, 0.0);
  double total_d = 0.0, total_a = 0.0;
  for (std::size_t i = 0; i < sides; ++i) {
    if (box.splits[i] >= max_depth || !(box.sides[i].width() > 0.0)) continue;
    smear_d[i] = box.sides[i].width() * magnitude(gap_grad[i]);
    smear_a[i] = box.sides[i].width() * magnitude(defect_grad[i]);
    total_d += smear_d[i];
    total_a += smear_a[i];
  }
  std::optional<std::size_t> best, widest;
  double best_score = 0.0, best_width = 0.0;
  for (std::size_t i = 0; i < sides; ++i) {
    if (box.splits[i] >= max_depth || !(box.sides[i].width() > 0.0)) continue;
    const double score = (total_d > 0.0 ? smear_d[i] / total_d : 0.0) + (total_a > 0.0 ? smear_a[i] / total_a : 0.0);
    if (score > best_score) {
      best_score = score;
      best = i;
    }
    if (box.sides[i].width() > best_width) {
      best_width = box.sides[i].width();
      widest = i;
    }
  }
  return best ? best : widest;
}

std::pair<Box, Box> bisect(const Box& box, std::size_t side) {
  Box lo = box, hi = box;
  ++lo.splits[side];
  ++hi.splits[side];
  lo.depth = hi.depth = std::max(box.depth, lo.splits[side]);
  const double mid = box.sides[side].mid();
  lo.sides[side] = Interval(box.sides[side].lo(), mid);
  hi.sides[side] = Interval(mid, box.sides[side].hi());
  return {std::move(lo), std::move(hi)};
}

nlohmann::json box_json(const Box& b) {
  nlohmann::json sides = nlohmann::json::array();
  for (const auto& v : b.sides) sides.push_back({v.lo(), v.hi()});
  return {{"chart", b.chart + 1}, {"sides", sides}, {"depth", b.depth}};
}

ConditionReport certify(const Polynomial& p, const Pos3Options& opts) {
  ConditionReport rep;
  rep.condition = Condition::Pos3;
  const std::size_t n = p.nvars();

  // D > 0 only yields |p(z)| < p(r) where p(r) > 0. Prove that globally
  // when possible; otherwise every proved box must also carry p(r) > 0 (this
  // admits p vanishing at vertices, which lie in the aligned set).
  nlohmann::json positivity;
  bool per_box_positivity = false;
  if (auto polya = polya_exponent(p, opts.polya_budget)) {
    positivity = {{"method", "polya"}, {"exponent", *polya}};
  } else {
    std::uint64_t boxes = 0;
    const bool ok = simplex_positive(p, opts.max_depth, boxes);
    rep.budget_used["positivity_boxes"] = boxes;
    per_box_positivity = !ok;
    positivity = ok ? nlohmann::json{{"method", "interval"}, {"boxes", boxes}}
                    : nlohmann::json{{"method", "per_box"}};
  }

  const Certifier cert(p);
  std::vector<Box> stack;
  for (std::size_t chart = n; chart-- > 0;) stack.push_back(cert.root(chart, true));
  std::uint64_t processed = 0, proved = 0, near_aligned = 0, exact_checks = 0;
  unsigned deepest = 0;
  std::vector<Box> unresolved;
  constexpr std::size_t kMaxUnresolved = 16;
  bool exhausted = false;
  std::vector<Interval> grad, defect_grad;
  std::vector<double> cr, ct;

  while (!stack.empty()) {
    if (processed >= opts.max_boxes) {
      exhausted = true;
      break;
    }
    Box box = std::move(stack.back());
    stack.pop_back();
    ++processed;
    deepest = std::max(deepest, box.depth);
    if (cert.defect(box, &defect_grad).hi() <= opts.delta) {
      ++near_aligned;
      continue;
    }
    Interval natural;
    const double lower = cert.gap_lower(box, grad, natural);
    if (lower > 0.0 && (!per_box_positivity || cert.modulus_value(box).lo() > 0.0)) {
      ++proved;
      continue;
    }
    const auto side = split_side(box, grad, defect_grad, opts.max_depth);
    if (natural.hi() < 0.0 || !side) {
      ++exact_checks;
      cert.center(box, cr, ct);
      if (auto w = exact_witness(p, cr, ct)) {
        rep.verdict = Verdict::Fails;
        rep.witness = std::move(w);
        rep.certificate = {{"mode", "Certify"}, {"stage", "branch_and_bound"},
                           {"equality", sgn(rep.witness->value) == 0}};
        rep.budget_used = {{"boxes", processed}, {"exact_checks", exact_checks}};
        return rep;
      }
    }
    if (!side) {
      unresolved.push_back(box);
      if (unresolved.size() >= kMaxUnresolved) break;
      continue;
    }
    auto [lo, hi] = bisect(box, *side);
    stack.push_back(std::move(hi));
    stack.push_back(std::move(lo));
  }
  rep.budget_used = {{"boxes", processed},
                     {"boxes_proved", proved},
                     {"boxes_near_aligned", near_aligned},
                     {"exact_checks", exact_checks}};
  if (exhausted || !unresolved.empty()) {
    nlohmann::json boxes = nlohmann::json::array();
    for (const auto& b : unresolved) boxes.push_back(box_json(b));
    rep.verdict = Verdict::Inconclusive;
    rep.certificate = {{"mode", "Certify"}, {"delta", opts.delta}, {"max_depth", opts.max_depth},
                       {"unresolved_boxes", boxes}, {"box_budget_exhausted", exhausted}};
    rep.note = exhausted ? "box budget exhausted" : "boxes unresolved at maximum depth";
    return rep;
  }

  // Near-aligned region: positive definiteness of J_f for every chart
  // p(..., 1 at position k, ...), sampled at interior points.
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> log_coord(-2.0, 2.0);
  std::uint64_t jf_checks = 0;
  bool all_pd = true;
  nlohmann::json failures = nlohmann::json::array();
  for (std::size_t k = 0; k < n && all_pd; ++k) {
    std::vector<std::size_t> sigma;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k) sigma.push_back(i);
    }
    sigma.push_back(k);
    const Polynomial f = dehomogenize(p, n - 1, sigma);
    if (newton_affine_dim(f) != n - 1) {
      all_pd = false;
      failures.push_back({{"chart", k + 1}, {"reason", "Newton polytope is not full-dimensional"}});
      break;
    }
    for (unsigned s = 0; s < std::max(opts.jf_samples, 1u); ++s) {
      std::vector<Rational> point(n - 1);
      for (auto& v : point) v = s == 0 ? Rational(1) : rational_near(std::exp(log_coord(rng)), 16);
      ++jf_checks;
      if (!is_positive_definite(jf_matrix(f, point))) {
        all_pd = false;
        nlohmann::json pt = nlohmann::json::array();
        for (const auto& v : point) pt.push_back(to_string(v));
        failures.push_back({{"chart", k + 1}, {"s", pt}});
        break;
      }
    }
  }
  rep.budget_used["jf_checks"] = jf_checks;
  nlohmann::json jf = {{"samples_per_chart", std::max(opts.jf_samples, 1u)},
                       {"charts", n},
                       {"all_positive_definite", all_pd},
                       {"resolution_limited", true}};
  if (!all_pd) jf["failures"] = failures;
  rep.certificate = {{"mode", "Certify"},
                     {"delta", opts.delta},
                     {"max_depth", opts.max_depth},
                     {"deepest_box", deepest},
                     {"orthant_positivity", positivity},
                     {"jf_probe", jf}};
  if (!all_pd) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = "J_f is not positive definite at a sampled interior point";
    return rep;
  }
  rep.verdict = Verdict::Holds;
  return rep;
}

}  // namespace

ConditionReport check_pos3(const Polynomial& p, const Pos3Options& opts) {
  if (!p.is_homogeneous()) throw DomainError("check_pos3 requires a homogeneous polynomial");
  if (p.is_constant()) throw DomainError("check_pos3 requires a nonconstant polynomial");
  if (!(opts.delta > 0.0) || !(opts.tolerance > 0.0)) {
    throw DomainError("check_pos3: delta and tolerance must be positive");
  }
  if (p.nvars() == 1) {
    ConditionReport rep;
    rep.condition = Condition::Pos3;
    rep.verdict = Verdict::Holds;
    rep.certificate = {{"vacuous", true}};
    rep.note = "single variable: every point lies in U(1) * R_+";
    return rep;
  }
  return opts.mode == Pos3Mode::Falsify ? falsify(p, opts) : certify(p, opts);
}

bool revalidate_pos3_witness(const Polynomial& p, std::span<const GaussianRational> z) {
  if (z.size() != p.nvars()) throw DimensionError("witness length does not match nvars");
  if (is_aligned(z)) return false;
  const Rational pz = eval_gaussian(p, z).norm();
  std::vector<Rational> moduli;
  for (const auto& c : z) {
    auto root = rational_sqrt(c.norm());
    if (!root) break;
    moduli.push_back(*root);
  }
  if (moduli.size() == z.size()) {
    const Rational pr = eval_rational(p, moduli);
    return sgn(pr) <= 0 || cmp(pz, pr * pr) >= 0;
  }
  std::vector<Interval> box;
  for (const auto& c : z) {
    const Interval sq = Interval::enclose(c.norm());
    box.emplace_back(std::nextafter(std::sqrt(sq.lo()), 0.0), std::nextafter(std::sqrt(sq.hi()), kInf));
  }
  const Interval pr = eval_interval(p, box);
  if (pr.hi() <= 0.0) return true;
  return (sqr(pr) - Interval::enclose(pz)).hi() < 0.0;
}

}  // namespace powerpos
