#pragma once

// Reference implementations used only by the tests. They share no code with
// the library: polynomials are plain maps from exponent vectors to rationals,
// products are schoolbook convolutions, determinants are Leibniz sums.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "powerpos/polynomial.hpp"

namespace oracle {

using Exps = std::vector<unsigned>;
using Dense = std::map<Exps, mpq_class>;

inline Dense from_library(const powerpos::Polynomial& p) {
  Dense d;
  for (const auto& [e, c] : p.terms()) {
    d[Exps(e.exponents().begin(), e.exponents().end())] = c;
  }
  return d;
}

inline Dense prune(Dense d) {
  std::erase_if(d, [](const auto& kv) { return kv.second == 0; });
  return d;
}

/// Convolution of coefficient arrays.
inline Dense multiply(const Dense& a, const Dense& b) {
  Dense out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  return prune(out);
}

inline Dense power(const Dense& a, unsigned m, std::size_t nvars) {
  Dense out{{Exps(nvars, 0), mpq_class(1)}};
  for (unsigned i = 0; i < m; ++i) out = multiply(out, a);
  return out;
}

inline mpq_class coefficient(const Dense& d, const Exps& e) {
  const auto it = d.find(e);
  return it == d.end() ? mpq_class(0) : it->second;
}

/// Every exponent vector of total degree deg in n variables, by recursion.
inline void compositions(unsigned deg, std::size_t n, Exps& cur, std::vector<Exps>& out) {
  if (cur.size() + 1 == n) {
    cur.push_back(deg);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned k = 0; k <= deg; ++k) {
    cur.push_back(k);
    compositions(deg - k, n, cur, out);
    cur.pop_back();
  }
}

/// Homogeneous of degree deg with every degree-deg coefficient > 0.
inline bool all_positive(const Dense& d, unsigned deg, std::size_t n) {
  std::vector<Exps> all;
  Exps cur;
  compositions(deg, n, cur, all);
  for (const auto& [e, c] : d) {
    if (std::accumulate(e.begin(), e.end(), 0u) != deg) return false;
  }
  return std::all_of(all.begin(), all.end(), [&](const Exps& e) { return coefficient(d, e) > 0; });
}

/// Leibniz determinant over all permutations.
template <typename T>
T leibniz_det(const std::vector<std::vector<T>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (perm[i] > perm[j]) ++inversions;
      }
    }
    T term(1);
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += (inversions % 2 == 0) ? term : T(-term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Breadth-first closure of {0} under +/- the generators, restricted to the
/// box [-radius, radius]^l; reports whether every unit vector is reached.
inline bool lattice_contains_units(const std::vector<std::vector<int>>& gens, std::size_t l,
                                   int radius) {
  const int side = 2 * radius + 1;
  std::size_t cells = 1;
  for (std::size_t i = 0; i < l; ++i) cells *= static_cast<std::size_t>(side);
  auto index = [&](const std::vector<int>& v) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < l; ++i) k = k * side + static_cast<std::size_t>(v[i] + radius);
    return k;
  };
  std::vector<char> seen(cells, 0);
  std::vector<std::vector<int>> queue{std::vector<int>(l, 0)};
  seen[index(queue.front())] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::vector<int> v = queue[head];
    for (const auto& g : gens) {
      for (int sign : {1, -1}) {
        std::vector<int> w(l);
        bool inside = true;
        for (std::size_t i = 0; i < l; ++i) {
          w[i] = v[i] + sign * g[i];
          if (std::abs(w[i]) > radius) inside = false;
        }
        if (!inside) continue;
        char& mark = seen[index(w)];
        if (!mark) {
          mark = 1;
          queue.push_back(std::move(w));
        }
      }
    }
  }
  for (std::size_t i = 0; i < l; ++i) {
    std::vector<int> e(l, 0);
    e[i] = 1;
    if (!seen[index(e)]) return false;
  }
  return true;
}

/// The rows generate Z^l iff some l x l minors exist and their gcd is 1.
inline bool minors_gcd_is_one(const std::vector<std::vector<int>>& rows, std::size_t l) {
  if (rows.size() < l) return false;
  mpz_class g = 0;
  std::vector<bool> pick(rows.size(), false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(l), pick.end(), true);
  do {
    std::vector<std::vector<mpz_class>> m;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!pick[r]) continue;
      m.emplace_back(rows[r].begin(), rows[r].end());
    }
    const mpz_class d = leibniz_det(m);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
  } while (std::next_permutation(pick.begin(), pick.end()));
  return g == 1;
}

}  // namespace oracle
