#pragma once

// Dualization of polyhedral cones by the double description method.

#include "toric_mirror/rational.hpp"

namespace toric {

struct DualCone {
  /// Extreme rays of {x : <g, x> >= 0 for all generators g}, primitive, sorted.
  IntMatrix rays;
  bool full_dimensional = false;
};

/// Generators must span the ambient space (dimension `dim`); throws otherwise.
DualCone dual_cone(const IntMatrix& generators, std::size_t dim);

/// Extreme rays of the cone spanned by `generators` (redundant generators dropped).
IntMatrix extreme_generators(const IntMatrix& generators, std::size_t dim);

}  // namespace toric
