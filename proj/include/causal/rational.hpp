#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace causal {

/// Exact rational used for real time and vector elements. Never floating point.
using Rational = mpq_class;

/// num/den in canonical form (mpq_class's two-argument constructor does not reduce).
Rational make_rational(long num, long den);

/// Smallest integer strictly greater than `x`, i.e. floor(x + 1).
Rational next_integer_above(const Rational& x);

bool is_integer(const Rational& x);

/// "num/den" with the denominator always present ("5/1").
std::string to_fraction_string(const Rational& x);

/// Accepts "n", "-n", "n/d". Throws Error(ParseError) otherwise or when d == 0.
Rational parse_rational(std::string_view text);

}  // namespace causal
