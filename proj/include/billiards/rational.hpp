#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace billiards {

// Exact arbitrary-precision rational. Kept canonical by the backend:
// denominator > 0 and gcd(numerator, denominator) == 1. All coordinate
// arithmetic in the library goes through this type; the default game
// never touches floating point.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", an integer, or a decimal literal ("0.5" -> 1/2, including
// an optional exponent, "25e-2" -> 1/4). Throws std::invalid_argument with
// a description on any other input.
Rational parse_rational(const std::string& text);

// Canonical text form: "p" when q == 1, otherwise "p/q".
std::string rational_to_string(const Rational& value);

double to_double(const Rational& value);

// round(value * 2^bits) / 2^bits, exactly.
Rational dyadic_snap(double value, unsigned bits);

// Exact power with non-negative integer exponent.
Rational rational_pow(const Rational& base, unsigned exponent);

}  // namespace billiards
