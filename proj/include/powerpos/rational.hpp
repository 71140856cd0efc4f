#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace powerpos {

// GMP arithmetic keeps mpq_class results canonical (reduced, positive
// denominator, 0 == 0/1); mpq_class(num, den) itself is not reduced.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "a" or "a/b" with an optional leading sign. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Shortest form: "3", "-3/2".
std::string to_string(const Rational& q);

/// Always "num/den", e.g. "3/1". Used by the JSON encodings.
std::string to_fraction_string(const Rational& q);

double to_double(const Rational& q);

/// Largest double not above q, and smallest double not below q.
double round_down(const Rational& q);
double round_up(const Rational& q);

/// Dyadic rational nearest to x with denominator 2^bits.
Rational rational_near(double x, unsigned bits = 24);

}  // namespace powerpos
