#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace polyident {

// GMP keeps mpq_class canonical (lowest terms, positive denominator) after
// every arithmetic operation; the helpers below keep that true on input too.
using Rational = mpq_class;
using Integer = mpz_class;

/// Exact parse of an optional sign followed by an integer ("7"), a fraction
/// ("-3/4") or a finite decimal ("0.125" -> 1/8). Exponents are rejected.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is one, "p/q" otherwise.
std::string to_string(const Rational& value);

int sign(const Rational& value);

}  // namespace polyident
