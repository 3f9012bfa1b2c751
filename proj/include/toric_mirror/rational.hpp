#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace toric {

using Rational = mpq_class;
using Integer = mpz_class;

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// "p/q" or "p" when the denominator is 1.
std::string to_string(const Rational& x);

/// Parses "p", "-p" or "p/q"; the result is canonicalized.
Rational parse_rational(const std::string& text);

Rational factorial(std::int64_t n);

RationalVector to_rational(const IntVector& v);

/// Scales a rational vector to the primitive integer vector on the same ray.
IntVector primitive_integer(const RationalVector& v);

std::int64_t gcd_of(const IntVector& v);

}  // namespace toric
