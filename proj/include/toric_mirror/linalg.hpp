#pragma once

// Small dense exact linear algebra over Q.

#include <optional>

#include "toric_mirror/rational.hpp"

namespace toric::linalg {

RationalMatrix to_rational(const IntMatrix& m);

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
RationalMatrix rref(RationalMatrix a, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const RationalMatrix& a);

Rational determinant(RationalMatrix a);

std::int64_t determinant(const IntMatrix& a);

/// Throws std::domain_error on a singular matrix.
RationalMatrix inverse(const RationalMatrix& a);

/// Some solution of a x = b, or nullopt if inconsistent. Free variables are set to 0.
std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b);

/// Basis of {x : a x = 0}.
RationalMatrix nullspace(const RationalMatrix& a, std::size_t columns);

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

RationalMatrix transpose(const RationalMatrix& a);

Rational dot(const RationalVector& a, const RationalVector& b);

}  // namespace toric::linalg
