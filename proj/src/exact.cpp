#include "dtransport/exact.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dtransport {

Rational pow(const Rational& base, unsigned long exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

double log(const Integer& value) {
  if (sgn(value) <= 0) {
    throw std::domain_error("log of a non-positive integer");
  }
  long exp2 = 0;
  const double mantissa = mpz_get_d_2exp(&exp2, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exp2) * std::numbers::ln2;
}

double log(const Rational& value) {
  if (sgn(value) <= 0) {
    throw std::domain_error("log of a non-positive rational");
  }
  return log(Integer(value.get_num())) - log(Integer(value.get_den()));
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_string(const Integer& value) { return value.get_str(); }

namespace {

bool is_digit_run(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    digits.remove_prefix(1);
  }
  if (!is_digit_run(digits)) {
    throw std::invalid_argument("malformed integer: '" + std::string(text) + "'");
  }
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text));
  }
  const Integer num = parse_integer(text.substr(0, slash));
  const std::string_view den_text = text.substr(slash + 1);
  if (!is_digit_run(den_text)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  const Integer den(std::string(den_text), 10);
  if (den == 0) {
    throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational floor_to_grid(double value, unsigned long denominator) {
  if (!std::isfinite(value)) {
    throw std::domain_error("floor_to_grid of a non-finite value");
  }
  Integer scaled(std::floor(value * static_cast<double>(denominator)));
  Rational out(scaled, Integer(denominator));
  out.canonicalize();
  return out;
}

}  // namespace dtransport
