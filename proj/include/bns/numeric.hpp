#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace bns {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p", "-p" or "p/q"; the result is canonicalized. Throws
// Error(Parse) on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

// n^e for integer e (negative exponents give 1/n^|e|).
Rational rational_power(long base, long exponent);

Integer lcm_of_denominators(const std::vector<Rational>& values);
Integer gcd_of(const std::vector<Integer>& values);

}  // namespace bns
