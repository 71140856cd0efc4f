#include "powerpos/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "powerpos/errors.hpp"
#include "powerpos/parse.hpp"

namespace powerpos {

namespace {

void require_semiring_entry(const Polynomial& p) {
  for (const auto& [e, c] : p.terms()) {
    if (sgn(c) < 0 || c.get_den() != 1) {
      throw DomainError("matrix entry '" + serialize(p) + "' has a coefficient outside Z_+");
    }
  }
}

bool integral(const Polynomial& p) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [](const auto& t) { return t.second.get_den() == 1; });
}

// Tarjan's algorithm; components in reverse topological order.
class SccFinder {
 public:
  explicit SccFinder(const std::vector<std::vector<std::size_t>>& graph)
      : graph_(graph), index_(graph.size(), kUnset), low_(graph.size(), 0), on_stack_(graph.size(), false) {
    for (std::size_t v = 0; v < graph.size(); ++v) {
      if (index_[v] == kUnset) visit(v);
    }
  }

  const std::vector<std::vector<std::size_t>>& components() const { return components_; }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  void visit(std::size_t v) {
    index_[v] = low_[v] = counter_++;
    stack_.push_back(v);
    on_stack_[v] = true;
    for (std::size_t w : graph_[v]) {
      if (index_[w] == kUnset) {
        visit(w);
        low_[v] = std::min(low_[v], low_[w]);
      } else if (on_stack_[w]) {
        low_[v] = std::min(low_[v], index_[w]);
      }
    }
    if (low_[v] == index_[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack_.back();
        stack_.pop_back();
        on_stack_[w] = false;
        comp.push_back(w);
      } while (w != v);
      components_.push_back(std::move(comp));
    }
  }

  const std::vector<std::vector<std::size_t>>& graph_;
  std::vector<std::size_t> index_;
  std::vector<std::size_t> low_;
  std::vector<bool> on_stack_;
  std::vector<std::size_t> stack_;
  std::vector<std::vector<std::size_t>> components_;
  std::size_t counter_ = 0;
};

// gcd of closed-walk lengths inside one strongly connected component;
// 0 when the component carries no closed walk.
std::size_t component_period(const std::vector<std::vector<std::size_t>>& graph,
                             const std::vector<std::size_t>& comp) {
  std::vector<long> level(graph.size(), -1);
  std::vector<bool> member(graph.size(), false);
  for (std::size_t v : comp) member[v] = true;
  std::vector<std::size_t> queue{comp.front()};
  level[comp.front()] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    for (std::size_t w : graph[u]) {
      if (member[w] && level[w] < 0) {
        level[w] = level[u] + 1;
        queue.push_back(w);
      }
    }
  }
  std::size_t g = 0;
  for (std::size_t u : comp) {
    for (std::size_t w : graph[u]) {
      if (!member[w]) continue;
      const long diff = level[u] + 1 - level[w];
      g = std::gcd(g, static_cast<std::size_t>(std::abs(diff)));
    }
  }
  return g;
}

std::vector<double> evaluate_point(std::span<const Rational> x) {
  std::vector<double> out;
  for (const auto& v : x) {
    if (sgn(v) <= 0) throw DomainError("matrix evaluation point must be strictly positive");
    out.push_back(to_double(v));
  }
  return out;
}

Eigen::MatrixXd evaluate(const PolyMatrix& a, std::span<const Rational> x) {
  if (x.size() != a.nvars()) throw DimensionError("point length does not match nvars");
  const auto xd = evaluate_point(x);
  Eigen::MatrixXd m(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = eval_double(a(i, j), xd);
  }
  return m;
}

}  // namespace

PolyMatrix::PolyMatrix(std::size_t dim, std::size_t nvars)
    : dim_(dim), nvars_(nvars), entries_(dim * dim, Polynomial(nvars)) {
  if (dim == 0) throw DomainError("matrix dimension must be positive");
}

PolyMatrix::PolyMatrix(std::size_t dim, std::vector<Polynomial> entries)
    : dim_(dim), nvars_(entries.empty() ? 0 : entries.front().nvars()), entries_(std::move(entries)) {
  if (dim == 0) throw DomainError("matrix dimension must be positive");
  if (entries_.size() != dim * dim) throw DimensionError("expected dim*dim matrix entries");
  for (const auto& e : entries_) {
    if (e.nvars() != nvars_) throw DimensionError("matrix entries have different nvars");
    require_semiring_entry(e);
  }
}

PolyMatrix PolyMatrix::single(const Polynomial& p) { return PolyMatrix(1, std::vector<Polynomial>{p}); }

void PolyMatrix::set(std::size_t i, std::size_t j, Polynomial value) {
  if (i >= dim_ || j >= dim_) throw DomainError("matrix index out of range");
  if (value.nvars() != nvars_) throw DimensionError("entry nvars does not match matrix");
  require_semiring_entry(value);
  entries_[i * dim_ + j] = std::move(value);
}

PolyMatrix polymatrix_from_json(const nlohmann::json& j) {
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    const auto nvars = j.at("nvars").get<std::size_t>();
    const auto& rows = j.at("entries");
    if (rows.size() != dim) throw ParseError("matrix has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(dim), 0);
    std::vector<Polynomial> entries;
    for (const auto& row : rows) {
      if (row.size() != dim) throw ParseError("matrix row has wrong length", 0);
      for (const auto& cell : row) entries.push_back(parse(cell.get<std::string>(), nvars));
    }
    return PolyMatrix(dim, std::move(entries));
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed matrix JSON: ") + ex.what(), 0);
  } catch (const DomainError& ex) {
    throw ParseError(ex.what(), 0);
  }
}

std::vector<std::vector<std::size_t>> support_digraph(const PolyMatrix& a) {
  std::vector<std::vector<std::size_t>> g(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (!a(i, j).is_zero()) g[i].push_back(j);
    }
  }
  return g;
}

bool is_irreducible(const PolyMatrix& a) {
  const auto g = support_digraph(a);
  const SccFinder scc(g);
  if (scc.components().size() != 1) return false;
  // A single node needs a self-loop for a walk of length >= 1.
  return a.dim() > 1 || !g[0].empty();
}

bool is_aperiodic(const PolyMatrix& a) {
  const auto g = support_digraph(a);
  const SccFinder scc(g);
  for (const auto& comp : scc.components()) {
    if (component_period(g, comp) != 1) return false;
  }
  return true;
}

PerronResult perron(const PolyMatrix& a, std::span<const Rational> x, double tol, unsigned max_iterations) {
  const Eigen::MatrixXd m = evaluate(a, x);
  const std::size_t n = a.dim();
  const Eigen::MatrixXd shifted = m + Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  PerronResult res;
  for (unsigned it = 1; it <= max_iterations; ++it) {
    const Eigen::VectorXd w = shifted * v;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
      const double ratio = w(i) / v(i);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    // (A + I)v / v - 1 = Av / v.
    res.lower = lo - 1.0;
    res.upper = hi - 1.0;
    res.iterations = it;
    v = w / w.maxCoeff();
    if (res.upper - res.lower <= tol * std::max(1.0, std::abs(res.upper))) {
      res.value = 0.5 * (res.lower + res.upper);
      res.vector.assign(v.data(), v.data() + n);
      return res;
    }
    if (!(v.minCoeff() > 0.0)) {
      throw BudgetError("power iteration lost positivity; matrix is not irreducible at this point");
    }
  }
  throw BudgetError("power iteration did not converge within " + std::to_string(max_iterations) + " steps");
}

double beta_at(const PolyMatrix& a, std::span<const Rational> x, double tol) {
  return perron(a, x, tol).value;
}

Polynomial charpoly_residual(const PolyMatrix& a, const Polynomial& p) {
  if (p.nvars() != a.nvars()) throw DimensionError("charpoly_residual: p and A have different nvars");
  const std::size_t n = a.dim();
  if (n > 8) throw BudgetError("charpoly_residual supports dim <= 8");
  std::vector<Polynomial> m;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.push_back(i == j ? p - a(i, j) : -a(i, j));
  }
  // minor[mask]: determinant of rows 0..|mask|-1 against the columns in mask,
  // expanded along its last row. Division-free.
  std::vector<Polynomial> minor(std::size_t{1} << n, Polynomial(a.nvars()));
  minor[0] = Polynomial::constant(a.nvars(), 1);
  for (std::size_t mask = 1; mask < minor.size(); ++mask) {
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask)) - 1;
    Polynomial acc(a.nvars());
    std::size_t position = 0;
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask & (std::size_t{1} << col))) continue;
      const Polynomial& entry = m[row * n + col];
      if (!entry.is_zero() && !minor[mask ^ (std::size_t{1} << col)].is_zero()) {
        Polynomial term = entry * minor[mask ^ (std::size_t{1} << col)];
        if ((row + position) % 2 == 0) acc += term;
        else acc -= term;
      }
      ++position;
    }
    minor[mask] = std::move(acc);
  }
  return minor.back();
}

std::string to_string(BetaVerdict v) {
  switch (v) {
    case BetaVerdict::Verified: return "Verified";
    case BetaVerdict::Refuted: return "Refuted";
    case BetaVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

BetaReport verify_beta(const PolyMatrix& a, const Polynomial& p, unsigned sample_count, double tol,
                       std::uint64_t seed) {
  if (p.nvars() != a.nvars()) throw DimensionError("verify_beta: p and A have different nvars");
  BetaReport rep;
  rep.irreducible = is_irreducible(a);
  rep.aperiodic = is_aperiodic(a);
  rep.integral_target = integral(p);
  if (!rep.irreducible && !rep.aperiodic) {
    rep.verdict = BetaVerdict::Inconclusive;
    rep.note = "matrix is neither irreducible nor aperiodic";
    return rep;
  }
  rep.exact_charpoly_zero = charpoly_residual(a, p).is_zero();
  if (!rep.exact_charpoly_zero) {
    rep.verdict = BetaVerdict::Refuted;
    rep.note = "det(pI - A) does not vanish identically";
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_coord(-1.0, 1.0);
  for (unsigned s = 0; s < sample_count; ++s) {
    BetaSample sample;
    for (std::size_t i = 0; i < a.nvars(); ++i) sample.point.push_back(rational_near(std::exp(log_coord(rng)), 16));
    sample.p_value = to_double(eval_rational(p, sample.point));
    try {
      sample.perron_value = perron(a, sample.point, 0.1 * tol).value;
    } catch (const BudgetError& ex) {
      rep.samples.push_back(sample);
      rep.verdict = BetaVerdict::Inconclusive;
      rep.note = ex.what();
      return rep;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(evaluate(a, sample.point), false);
    std::vector<double> moduli;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) moduli.push_back(std::abs(solver.eigenvalues()(i)));
    std::sort(moduli.rbegin(), moduli.rend());
    sample.gap_to_second_modulus = sample.perron_value - (moduli.size() > 1 ? moduli[1] : 0.0);
    const bool matches = std::abs(sample.p_value - sample.perron_value) <= tol * (1.0 + std::abs(sample.p_value));
    rep.samples.push_back(std::move(sample));
    if (!matches) {
      rep.verdict = BetaVerdict::Refuted;
      rep.note = "p differs from the Perron root at a sample point";
      return rep;
    }
  }
  rep.verdict = BetaVerdict::Verified;
  return rep;
}

nlohmann::json to_json(const BetaReport& report) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : report.samples) {
    nlohmann::json pt = nlohmann::json::array();
    for (const auto& v : s.point) pt.push_back(to_string(v));
    samples.push_back({{"point", pt},
                       {"p_value", s.p_value},
                       {"perron_value", s.perron_value},
                       {"gap_to_second_modulus", s.gap_to_second_modulus}});
  }
  nlohmann::json j = {{"verdict", to_string(report.verdict)},
                      {"exact_charpoly_zero", report.exact_charpoly_zero},
                      {"irreducible", report.irreducible},
                      {"aperiodic", report.aperiodic},
                      {"integral_target", report.integral_target},
                      {"samples", samples}};
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

}  // namespace powerpos
