#include "powerpos/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "powerpos/errors.hpp"

namespace powerpos {

MultiIndex::MultiIndex(std::initializer_list<unsigned> exps)
    : exps_(exps), total_(std::accumulate(exps.begin(), exps.end(), 0u)) {}

MultiIndex::MultiIndex(std::vector<unsigned> exps)
    : exps_(std::move(exps)), total_(std::accumulate(exps_.begin(), exps_.end(), 0u)) {}

void MultiIndex::set(std::size_t i, unsigned value) {
  total_ = total_ - exps_.at(i) + value;
  exps_[i] = value;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  MultiIndex r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  r.total_ += other.total_;
  return r;
}

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
  if (a.total() != b.total()) return a.total() > b.total();
  const auto ea = a.exponents(), eb = b.exponents();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end(),
                                      [](unsigned x, unsigned y) { return x > y; });
}

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(MultiIndex(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t k) {
  if (k >= nvars) throw DomainError("variable index " + std::to_string(k + 1) + " out of range");
  MultiIndex e(nvars);
  e.set(k, 1);
  return monomial(e, 1);
}

Polynomial Polynomial::monomial(const MultiIndex& exps, const Rational& c) {
  Polynomial p(exps.size());
  p.add_term(exps, c);
  return p;
}

Polynomial Polynomial::linear_sum(std::size_t nvars) {
  Polynomial p(nvars);
  for (std::size_t k = 0; k < nvars; ++k) p += variable(nvars, k);
  return p;
}

Rational Polynomial::coefficient(const MultiIndex& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const MultiIndex& exps, const Rational& c) {
  if (exps.size() != nvars_) throw DimensionError("exponent length does not match nvars");
  if (sgn(c) == 0) return;
  // mpq_class(num, den) is not reduced on construction; store canonically.
  Rational value(c);
  value.canonicalize();
  auto [it, inserted] = terms_.try_emplace(exps, value);
  if (!inserted) {
    it->second += value;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

std::optional<unsigned> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.total();  // graded order: largest first
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.total() == terms_.rbegin()->first.total();
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0);
}

std::optional<Rational> Polynomial::min_coefficient() const {
  if (terms_.empty()) return std::nullopt;
  Rational m = terms_.begin()->second;
  for (const auto& [e, c] : terms_) {
    if (c < m) m = c;
  }
  return m;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.nvars_ != nvars_) throw DimensionError("nvars mismatch in addition");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.nvars_ != nvars_) throw DimensionError("nvars mismatch in subtraction");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw DimensionError("nvars mismatch in multiplication");
  Polynomial r(a.nvars_);
  Rational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      prod = ca * cb;
      r.add_term(ea + eb, prod);
    }
  }
  return r;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial r = a;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial add(const Polynomial& a, const Polynomial& b) { return a + b; }

Polynomial mul(const Polynomial& a, const Polynomial& b) { return a * b; }

Polynomial pow(const Polynomial& a, unsigned m) {
  Polynomial result = Polynomial::constant(a.nvars(), 1);
  Polynomial base = a;
  while (m > 0) {
    if (m & 1u) result = result * base;
    m >>= 1;
    if (m > 0) base = base * base;
  }
  return result;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t k) {
  if (k >= p.nvars()) throw DomainError("derivative index " + std::to_string(k + 1) + " out of range");
  Polynomial r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    const unsigned ek = e[k];
    if (ek == 0) continue;
    MultiIndex d = e;
    d.set(k, ek - 1);
    r.add_term(d, c * ek);
  }
  return r;
}

BigInt monomial_count(unsigned degree, std::size_t nvars) {
  if (nvars == 0) return degree == 0 ? 1 : 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), degree + nvars - 1, nvars - 1);
  return r;
}

namespace {

void enumerate(std::vector<unsigned>& cur, std::size_t pos, unsigned remaining,
               std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    cur[pos] = e;
    enumerate(cur, pos + 1, remaining - e, out);
  }
}

template <typename T>
std::vector<std::vector<T>> power_table(const Polynomial& p, std::span<const T> x) {
  std::vector<unsigned> max_exp(p.nvars(), 0);
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < p.nvars(); ++i) max_exp[i] = std::max(max_exp[i], e[i]);
  }
  std::vector<std::vector<T>> table(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    table[i].reserve(max_exp[i] + 1);
    table[i].push_back(T(1));
    for (unsigned k = 1; k <= max_exp[i]; ++k) table[i].push_back(table[i].back() * x[i]);
  }
  return table;
}

void check_point(const Polynomial& p, std::size_t size) {
  if (size != p.nvars()) throw DimensionError("point length does not match nvars");
}

}  // namespace

std::vector<MultiIndex> monomials_of_degree(unsigned degree, std::size_t nvars) {
  std::vector<MultiIndex> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(std::vector<unsigned>{});
    return out;
  }
  std::vector<unsigned> cur(nvars, 0);
  enumerate(cur, 0, degree, out);
  return out;
}

Rational eval_rational(const Polynomial& p, std::span<const Rational> x) {
  check_point(p, x.size());
  const auto table = power_table<Rational>(p, x);
  Rational sum = 0, term;
  for (const auto& [e, c] : p.terms()) {
    term = c;
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (e[i] != 0) term *= table[i][e[i]];
    }
    sum += term;
  }
  return sum;
}

double eval_double(const Polynomial& p, std::span<const double> x) {
  check_point(p, x.size());
  const auto table = power_table<double>(p, x);
  double sum = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double term = to_double(c);
    for (std::size_t i = 0; i < p.nvars(); ++i) term *= table[i][e[i]];
    sum += term;
  }
  return sum;
}

std::complex<double> eval_complex(const Polynomial& p, std::span<const std::complex<double>> z) {
  check_point(p, z.size());
  const auto table = power_table<std::complex<double>>(p, z);
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : p.terms()) {
    std::complex<double> term = to_double(c);
    for (std::size_t i = 0; i < p.nvars(); ++i) term *= table[i][e[i]];
    sum += term;
  }
  return sum;
}

GaussianRational eval_gaussian(const Polynomial& p, std::span<const GaussianRational> z) {
  check_point(p, z.size());
  std::vector<std::vector<GaussianRational>> table(p.nvars());
  std::vector<unsigned> max_exp(p.nvars(), 0);
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < p.nvars(); ++i) max_exp[i] = std::max(max_exp[i], e[i]);
  }
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    table[i].push_back({1, 0});
    for (unsigned k = 1; k <= max_exp[i]; ++k) table[i].push_back(table[i].back() * z[i]);
  }
  GaussianRational sum{0, 0};
  for (const auto& [e, c] : p.terms()) {
    GaussianRational term{c, 0};
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (e[i] != 0) term = term * table[i][e[i]];
    }
    sum = sum + term;
  }
  return sum;
}

Interval eval_interval(const Polynomial& p, std::span<const Interval> box) {
  check_point(p, box.size());
  Interval sum(0.0);
  for (const auto& [e, c] : p.terms()) {
    Interval term = Interval::enclose(c);
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (e[i] != 0) term *= pow(box[i], e[i]);
    }
    sum += term;
  }
  return sum;
}

Polynomial dehomogenize(const Polynomial& p, std::size_t ell, std::span<const std::size_t> sigma) {
  const std::size_t n = p.nvars();
  if (!p.is_homogeneous()) throw DomainError("dehomogenize requires a homogeneous polynomial");
  if (ell < 1 || ell + 1 > n) {
    throw DomainError("dehomogenize: ell must satisfy 1 <= ell <= nvars-1");
  }
  if (sigma.size() != n) throw DimensionError("permutation length does not match nvars");
  std::vector<bool> seen(n, false);
  for (std::size_t v : sigma) {
    if (v >= n || seen[v]) throw DomainError("sigma is not a permutation");
    seen[v] = true;
  }
  Polynomial r(ell);
  for (const auto& [e, c] : p.terms()) {
    bool vanishes = false;
    for (std::size_t i = ell; i + 1 < n; ++i) {
      if (e[sigma[i]] != 0) {
        vanishes = true;
        break;
      }
    }
    if (vanishes) continue;
    std::vector<unsigned> s(ell);
    for (std::size_t i = 0; i < ell; ++i) s[i] = e[sigma[i]];
    r.add_term(MultiIndex(std::move(s)), c);
  }
  return r;
}

Polynomial insert_variable(const Polynomial& p, std::size_t k) {
  if (k > p.nvars()) throw DomainError("insert_variable position out of range");
  Polynomial r(p.nvars() + 1);
  for (const auto& [e, c] : p.terms()) {
    std::vector<unsigned> v(e.exponents().begin(), e.exponents().end());
    v.insert(v.begin() + static_cast<std::ptrdiff_t>(k), 0u);
    r.add_term(MultiIndex(std::move(v)), c);
  }
  return r;
}

Polynomial substitute(const Polynomial& p, std::size_t k, const Rational& value) {
  if (k >= p.nvars()) throw DomainError("substitute index out of range");
  if (p.nvars() == 1) throw DomainError("cannot drop the only variable");
  Polynomial r(p.nvars() - 1);
  Rational factor;
  for (const auto& [e, c] : p.terms()) {
    std::vector<unsigned> v(e.exponents().begin(), e.exponents().end());
    const unsigned ek = v[k];
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(k));
    if (ek == 0) {
      factor = 1;
    } else {
      mpz_pow_ui(factor.get_num_mpz_t(), value.get_num_mpz_t(), ek);
      mpz_pow_ui(factor.get_den_mpz_t(), value.get_den_mpz_t(), ek);
    }
    r.add_term(MultiIndex(std::move(v)), c * factor);
  }
  return r;
}

}  // namespace powerpos
