#include "powerpos/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "powerpos/errors.hpp"

namespace powerpos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

// Libm trig is accurate to within an ulp or two; widen by a few ulps.
double trig_down(double x) { return std::max(-1.0, down(down(down(x)))); }
double trig_up(double x) { return std::min(1.0, up(up(up(x)))); }

}  // namespace

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo <= hi)) throw DomainError("interval with lo > hi");
}

Interval Interval::enclose(const Rational& q) { return Interval(round_down(q), round_up(q)); }

bool Interval::contains(const Rational& q) const {
  return cmp(Rational(lo_), q) <= 0 && cmp(q, Rational(hi_)) <= 0;
}

Interval sqr(const Interval& x) {
  using interval_detail::widen_down;
  using interval_detail::widen_up;
  if (x.lo() >= 0.0) return Interval(std::max(0.0, widen_down(x.lo() * x.lo())), widen_up(x.hi() * x.hi()));
  if (x.hi() <= 0.0) return Interval(std::max(0.0, widen_down(x.hi() * x.hi())), widen_up(x.lo() * x.lo()));
  const double m = std::max(-x.lo(), x.hi());
  return Interval(0.0, widen_up(m * m));
}

Interval pow(const Interval& x, unsigned k) {
  if (k == 0) return Interval(1.0);
  if (k % 2 == 0) {
    Interval half = pow(x, k / 2);
    return sqr(half);
  }
  Interval r = x;
  for (unsigned i = 1; i < k; ++i) r *= x;
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval cos(const Interval& x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (x.width() >= two_pi) return Interval(-1.0, 1.0);
  const double c_lo = std::cos(x.lo()), c_hi = std::cos(x.hi());
  double lo = std::min(c_lo, c_hi), hi = std::max(c_lo, c_hi);
  // Extrema of cos sit at multiples of pi; k*pi inside [lo, hi] (padded).
  const double pad = 1e-12 * (1.0 + std::abs(x.lo()) + std::abs(x.hi()));
  const long k_lo = static_cast<long>(std::ceil((x.lo() - pad) / std::numbers::pi));
  const long k_hi = static_cast<long>(std::floor((x.hi() + pad) / std::numbers::pi));
  for (long k = k_lo; k <= k_hi; ++k) {
    if (k % 2 == 0) hi = 1.0;
    else lo = -1.0;
  }
  return Interval(trig_down(lo), trig_up(hi));
}

Interval sin(const Interval& x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (x.width() >= two_pi) return Interval(-1.0, 1.0);
  const double s_lo = std::sin(x.lo()), s_hi = std::sin(x.hi());
  double lo = std::min(s_lo, s_hi), hi = std::max(s_lo, s_hi);
  // Extrema of sin sit at pi/2 + k*pi; the padding absorbs the rounding of
  // the shifted endpoints.
  const double pad = 1e-12 * (1.0 + std::abs(x.lo()) + std::abs(x.hi()));
  const double half_pi = std::numbers::pi / 2;
  const long k_lo = static_cast<long>(std::ceil((x.lo() - half_pi - pad) / std::numbers::pi));
  const long k_hi = static_cast<long>(std::floor((x.hi() - half_pi + pad) / std::numbers::pi));
  for (long k = k_lo; k <= k_hi; ++k) {
    if (k % 2 == 0) hi = 1.0;
    else lo = -1.0;
  }
  return Interval(trig_down(lo), trig_up(hi));
}

Interval sin_squared(const Interval& x) {
  // sin^2 has period pi, zeros at k*pi and maxima at pi/2 + k*pi.
  if (x.width() >= std::numbers::pi) return Interval(0.0, 1.0);
  const double s_lo = std::sin(x.lo()), s_hi = std::sin(x.hi());
  double lo = std::min(s_lo * s_lo, s_hi * s_hi), hi = std::max(s_lo * s_lo, s_hi * s_hi);
  const double pad = 1e-12 * (1.0 + std::abs(x.lo()) + std::abs(x.hi()));
  const double half_pi = std::numbers::pi / 2;
  const long k_lo = static_cast<long>(std::ceil((x.lo() - pad) / half_pi));
  const long k_hi = static_cast<long>(std::floor((x.hi() + pad) / half_pi));
  for (long k = k_lo; k <= k_hi; ++k) {
    if (k % 2 == 0) lo = 0.0;
    else hi = 1.0;
  }
  lo = std::max(0.0, down(down(down(lo))));
  hi = std::min(1.0, up(up(up(hi))));
  return Interval(lo, hi);
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << '[' << x.lo() << ", " << x.hi() << ']';
}

}  // namespace powerpos
