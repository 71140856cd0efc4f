#pragma once

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <limits>

#include "powerpos/rational.hpp"

namespace powerpos {

namespace interval_detail {

// Round-to-nearest errs by at most 2^-53 |x| (or half the smallest
// subnormal); widening by 2^-51 |x| plus the smallest subnormal is outward.
inline double widen_down(double x) {
  if (!std::isfinite(x)) return x;
  return x - (std::abs(x) * 0x1p-51 + std::numeric_limits<double>::denorm_min());
}
inline double widen_up(double x) {
  if (!std::isfinite(x)) return x;
  return x + (std::abs(x) * 0x1p-51 + std::numeric_limits<double>::denorm_min());
}

}  // namespace interval_detail

/// Closed interval of doubles. Every operation rounds outward by one ulp on
/// each side, so the result encloses the exact real result.
class Interval {
 public:
  Interval() = default;
  explicit Interval(double x) : lo_(x), hi_(x) {}
  Interval(double lo, double hi);

  /// Tightest double enclosure of an exact rational.
  static Interval enclose(const Rational& q);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double mid() const noexcept { return 0.5 * (lo_ + hi_); }
  double width() const noexcept { return hi_ - lo_; }
  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains(const Rational& q) const;
  bool contains_zero() const noexcept { return lo_ <= 0.0 && 0.0 <= hi_; }

  Interval& operator+=(const Interval& o) {
    const bool nonneg = lo_ >= 0.0 && o.lo_ >= 0.0;
    lo_ = interval_detail::widen_down(lo_ + o.lo_);
    hi_ = interval_detail::widen_up(hi_ + o.hi_);
    if (nonneg) lo_ = std::max(lo_, 0.0);
    return *this;
  }
  Interval& operator-=(const Interval& o) {
    const double lo = interval_detail::widen_down(lo_ - o.hi_);
    hi_ = interval_detail::widen_up(hi_ - o.lo_);
    lo_ = lo;
    return *this;
  }
  Interval& operator*=(const Interval& o) {
    // Exact zeros stay exact; products of nonnegative intervals stay
    // nonnegative.
    if ((lo_ == 0.0 && hi_ == 0.0) || (o.lo_ == 0.0 && o.hi_ == 0.0)) {
      lo_ = hi_ = 0.0;
      return *this;
    }
    const double a = lo_ * o.lo_, b = lo_ * o.hi_, c = hi_ * o.lo_, d = hi_ * o.hi_;
    const bool nonneg = lo_ >= 0.0 && o.lo_ >= 0.0;
    lo_ = interval_detail::widen_down(std::min(std::min(a, b), std::min(c, d)));
    hi_ = interval_detail::widen_up(std::max(std::max(a, b), std::max(c, d)));
    if (nonneg) lo_ = std::max(lo_, 0.0);
    return *this;
  }

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator-(const Interval& a) { return Interval(-a.hi_, -a.lo_); }

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// x^k with the exact range for even k (e.g. [-1,2]^2 = [0,4]).
Interval pow(const Interval& x, unsigned k);
Interval sqr(const Interval& x);
/// Range of sin(x)^2 over x.
Interval sin_squared(const Interval& x);
/// Range of sin(x) over x.
Interval sin(const Interval& x);
/// Range of cos(x) over x.
Interval cos(const Interval& x);
Interval hull(const Interval& a, const Interval& b);

std::ostream& operator<<(std::ostream& os, const Interval& x);

}  // namespace powerpos
