#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dyadic {

// Exact arithmetic for masses and coefficients. Values are kept canonical
// (reduced, positive denominator) after every operation.
using Rational = mpq_class;
using BigInt = mpz_class;

// "p/q" with an explicit denominator, also for integers ("3/1").
std::string to_fraction_string(const Rational& value);

// Accepts "p", "p/q" and finite decimals such as "0.25" or "-1.5".
Rational parse_rational(std::string_view text);

// Nearest double, for rendering only.
double to_double(const Rational& value);

}  // namespace dyadic
