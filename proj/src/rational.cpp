#include "billiards/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string_view>

namespace billiards {

namespace {

[[noreturn]] void bad_literal(const std::string& text, const char* why) {
  throw std::invalid_argument("invalid rational literal \"" + text + "\": " + why);
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Splits an optional leading sign; returns true for negative.
bool take_sign(std::string_view& s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    const bool neg = s.front() == '-';
    s.remove_prefix(1);
    return neg;
  }
  return false;
}

BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string_view s(text);
  if (s.empty()) bad_literal(text, "empty");

  const auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    const bool neg = take_sign(num);
    if (!all_digits(num)) bad_literal(text, "malformed numerator");
    if (!all_digits(den)) bad_literal(text, "denominator must be an unsigned integer");
    const BigInt q{std::string(den)};
    if (q == 0) bad_literal(text, "zero denominator");
    Rational r(BigInt{std::string(num)}, q);
    return neg ? Rational(-r) : r;
  }

  // decimal literal: [sign] digits [. digits] [e [sign] digits]
  const bool neg = take_sign(s);
  std::string_view mantissa = s;
  long long exp10 = 0;
  const auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    mantissa = s.substr(0, epos);
    std::string_view es = s.substr(epos + 1);
    const bool eneg = take_sign(es);
    if (!all_digits(es) || es.size() > 6) bad_literal(text, "malformed exponent");
    exp10 = std::stoll(std::string(es));
    if (eneg) exp10 = -exp10;
  }

  std::string_view intpart = mantissa, fracpart;
  const auto dot = mantissa.find('.');
  if (dot != std::string_view::npos) {
    intpart = mantissa.substr(0, dot);
    fracpart = mantissa.substr(dot + 1);
    if (fracpart.empty()) bad_literal(text, "missing digits after decimal point");
  }
  if (!all_digits(intpart)) bad_literal(text, "malformed number");
  if (!fracpart.empty() && !all_digits(fracpart)) bad_literal(text, "malformed fraction");

  BigInt num{std::string(intpart) + std::string(fracpart)};
  BigInt den = pow10(static_cast<unsigned>(fracpart.size()));
  if (exp10 >= 0)
    num *= pow10(static_cast<unsigned>(exp10));
  else
    den *= pow10(static_cast<unsigned>(-exp10));

  Rational r(num, den);
  return neg ? Rational(-r) : r;
}

std::string rational_to_string(const Rational& value) {
  std::string s = numerator(value).str();
  if (denominator(value) != 1) {
    s += '/';
    s += denominator(value).str();
  }
  return s;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational dyadic_snap(double value, unsigned bits) {
  const double scaled = std::ldexp(value, static_cast<int>(bits));
  if (!std::isfinite(scaled) || std::fabs(scaled) >= 9.0e18)
    throw std::invalid_argument("value out of range for dyadic snap");
  return Rational(BigInt(std::llround(scaled)), BigInt(1) << bits);
}

Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace billiards
