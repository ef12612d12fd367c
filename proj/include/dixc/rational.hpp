#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace dixc {

// Exact rational number; GMP keeps it canonical (lowest terms, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;

using RationalVector = std::vector<Rational>;

// Accepts "p/q", "p" and "-p/q". Throws ParseError on anything else,
// including a zero denominator.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Human rendering: terminating decimals are printed as decimals ("7.5"),
// everything else falls back to "p/q".
std::string to_decimal_string(const Rational& value);

// Comma separated list of rationals, e.g. "1,1,0" or "1/2,3".
RationalVector parse_rational_list(std::string_view text);

}  // namespace dixc
