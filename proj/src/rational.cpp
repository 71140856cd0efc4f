#include "powerpos/rational.hpp"

#include <cmath>
#include <limits>

#include "powerpos/errors.hpp"

namespace powerpos {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num)) throw ParseError("malformed rational '" + std::string(text) + "'", 0);
  if (!all_digits(den)) throw ParseError("malformed rational '" + std::string(text) + "'", slash + 1);
  BigInt d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", slash + 1);
  Rational q(BigInt(std::string(num), 10), d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

double to_double(const Rational& q) { return q.get_d(); }

double round_down(const Rational& q) {
  double d = q.get_d();  // truncates toward zero
  if (!std::isfinite(d)) return d;
  if (cmp(Rational(d), q) > 0) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

double round_up(const Rational& q) {
  double d = q.get_d();
  if (!std::isfinite(d)) return d;
  if (cmp(Rational(d), q) < 0) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

Rational rational_near(double x, unsigned bits) {
  const double scale = std::ldexp(1.0, static_cast<int>(bits));
  Rational q(BigInt(std::nearbyint(x * scale)), BigInt(1));
  q /= Rational(scale);
  return q;
}

}  // namespace powerpos
