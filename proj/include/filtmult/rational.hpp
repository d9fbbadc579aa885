#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace filtmult {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// "num/den" with an explicit denominator, e.g. "7/2", "2/1", "-1/3".
std::string to_fraction_string(const Rational& q);

/// Accepts "a", "a/b" and surrounding whitespace. Throws Error(ParseError).
Rational parse_rational(std::string_view text);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

BigInt floor_of(const Rational& q);
BigInt ceil_of(const Rational& q);

double to_double(const Rational& q);

/// n! as an exact integer.
BigInt factorial(unsigned n);

/// Binomial coefficient C(n, k) for n >= 0; 0 when k > n.
BigInt binomial(std::int64_t n, std::int64_t k);

/// Exact a^e for e >= 0.
Rational pow(const Rational& a, unsigned e);

}  // namespace filtmult
