#pragma once

// Arbitrary-precision integer and rational helpers shared by every module.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dtransport {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact power with a non-negative integer exponent.
Rational pow(const Rational& base, unsigned long exponent);

/// Natural logarithm of a positive integer; safe for values far beyond double range.
double log(const Integer& value);

/// Natural logarithm of a positive rational.
double log(const Rational& value);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Parses "p/q" or "p" (optional leading '-'). Decimal points, exponents and
/// whitespace are rejected. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Parses a base-10 integer literal. Throws std::invalid_argument.
Integer parse_integer(std::string_view text);

/// Largest rational with denominator `denominator` that is <= value.
Rational floor_to_grid(double value, unsigned long denominator);

}  // namespace dtransport
