#pragma once

// Lattice and fan combinatorics of smooth projective toric manifolds.
//
// Ray i is b_i in N = Z^n; a curve class is recorded by its pairings
// l_i = <D_i, C> with the toric divisors, i.e. as an integer relation
// sum_i l_i b_i = 0. A divisor matrix (m_{a,i}) expresses D_i = sum_a m_{a,i} p_a
// in an integral basis p_1..p_r of H^2; its rows are the l-vectors of the
// dual curve basis, so a curve with p-coordinates d has l = M^T d.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric_mirror/rational.hpp"
#include "toric_mirror/series.hpp"

namespace toric {

struct Fan {
  std::size_t dim = 0;
  IntMatrix rays;                                 // m rays in Z^dim
  std::vector<std::vector<std::size_t>> max_cones;  // 0-based ray indices, each of size dim

  std::size_t ray_count() const { return rays.size(); }
  std::size_t picard_rank() const { return rays.size() - dim; }
  friend bool operator==(const Fan&, const Fan&) = default;
};

/// Malformed input (wrong sizes, repeated or non-primitive rays, bad indices).
class FanStructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Gate { smooth, complete, projective, semi_positive, divisor_matrix };

/// A fan that is well formed but fails one of the geometric gates.
class FanGateError : public std::runtime_error {
 public:
  FanGateError(Gate gate, const std::string& what) : std::runtime_error(what), gate_(gate) {}
  Gate gate() const { return gate_; }

 private:
  Gate gate_;
};

const char* gate_name(Gate gate);

/// Throws FanStructureError with the offending index (1-based in messages).
void check_structure(const Fan& fan);

struct FanReport {
  bool smooth = false;
  bool complete = false;
  bool projective = false;
  bool semi_positive = false;
  bool fano = false;
};

FanReport validate(const Fan& fan);

/// Distinct classes of the torus-invariant curves, one per wall, sorted.
/// Requires a smooth fan whose walls each lie in exactly two maximal cones.
IntMatrix wall_curves(const Fan& fan);

class DivisorMatrix {
 public:
  DivisorMatrix() = default;

  /// Validates annihilation and integral right-invertibility (not nefness).
  DivisorMatrix(const Fan& fan, IntMatrix entries);

  const IntMatrix& entries() const { return entries_; }
  std::size_t rank() const { return entries_.size(); }
  std::size_t ray_count() const { return entries_.front().size(); }

  /// m x r integer matrix R with M R = I.
  const IntMatrix& right_inverse() const { return right_inverse_; }

  /// p-coordinates d of the curve class with pairings l (d = R^T l).
  IntVector curve_coordinates(const IntVector& pairings) const;

  /// Pairings l = M^T d of the class with p-coordinates d.
  IntVector curve_pairings(const IntVector& coords) const;

  /// p-coordinates of the class kappa(c) of a rational lift c in Q^m.
  RationalVector divisor_class(const RationalVector& lift) const;

 private:
  IntMatrix entries_;
  IntMatrix right_inverse_;
};

/// Basis p_a = D_i (i outside the first maximal cone); always valid, not always nef.
DivisorMatrix cone_splitting(const Fan& fan);

struct ConePair {
  IntMatrix mori_generators;  // extreme rays of NE(X), p-coordinates
  IntMatrix nef_generators;   // extreme rays of the nef cone, p-coordinates
  bool nef_full_dimensional = false;

  bool in_mori(const IntVector& d) const;
  bool in_nef(const RationalVector& x) const;
  bool in_nef_interior(const RationalVector& x) const;
};

/// Throws FanGateError(projective) if the nef cone is not full-dimensional.
ConePair cones(const Fan& fan, const DivisorMatrix& basis);

/// A user matrix is validated (annihilation, right inverse, nef rows); without one,
/// a nef basis is searched among small combinations of nef generators.
DivisorMatrix divisor_matrix(const Fan& fan, const std::optional<IntMatrix>& user_matrix);

/// All d in NE(X)_Z with sum_a d_a <= order, in lexicographic order.
IntMatrix enumerate_ne(const ConePair& cones, std::size_t rank, int order);

/// 0-based indices i such that b_i is a vertex of conv{b_1..b_m}.
std::vector<std::size_t> fan_polytope_vertices(const Fan& fan);

struct MomentPolytope {
  RationalVector lift;
  std::vector<std::pair<IntVector, Rational>> halfspaces;  // <normal, v> <= bound
};

struct OpenClosedPoint {
  std::vector<std::complex<double>> q;
  std::vector<double> eta;
  std::vector<std::complex<double>> h;
};

/// A validated smooth projective semi-positive toric manifold with its chosen nef basis.
class ToricManifold {
 public:
  /// Runs every gate; throws FanStructureError or FanGateError.
  static ToricManifold create(Fan fan, const std::optional<IntMatrix>& user_matrix = std::nullopt);

  const Fan& fan() const { return fan_; }
  const DivisorMatrix& basis() const { return basis_; }
  const ConePair& cone_pair() const { return cones_; }
  const IntMatrix& walls() const { return walls_; }
  const FanReport& report() const { return report_; }
  const std::vector<std::size_t>& polytope_vertices() const { return vertices_; }

  std::size_t dim() const { return fan_.dim; }
  std::size_t ray_count() const { return fan_.ray_count(); }
  std::size_t rank() const { return basis_.rank(); }
  bool is_fano() const { return report_.fano; }
  bool is_vertex(std::size_t i) const;

  /// <D_i, d> for a class with p-coordinates d.
  std::int64_t divisor_pairing(std::size_t i, const IntVector& d) const;
  std::int64_t c1_pairing(const IntVector& d) const;

  IntMatrix effective_classes(int order) const;

  /// Q[[q_1..q_r]] (tag "q") and Q[[y_1..y_r]] (tag "y"), nef-degree grading.
  Ring k_ring() const;
  Ring y_ring() const;

  /// Ring of z-exponents NE(X)_Z + (Z>=0)^m with grading z_i -> z_weights()[i].
  Ring z_ring() const;
  /// Positive weights w with sum_i w_i D_i = z_scale() * (p_1 + ... + p_r).
  const std::vector<int>& z_weights() const { return z_weights_; }
  int z_scale() const { return z_scale_; }
  /// Largest z-grade fully determined by K-data of nef order `order`.
  int z_order(int order) const { return z_scale_ * (order + 1) - 1; }

  /// q^d -> z^{(<D_i,d>)_i} (times z_shift when given), truncated at z_order(order).
  Series to_z(const Series& k_series, std::optional<std::size_t> z_shift = std::nullopt) const;

  MomentPolytope moment_polytope(const RationalVector& lift) const;
  OpenClosedPoint opcl_decompose(std::span<const std::complex<double>> z) const;

 private:
  ToricManifold() = default;

  Fan fan_;
  FanReport report_;
  IntMatrix walls_;
  DivisorMatrix basis_;
  ConePair cones_;
  std::vector<std::size_t> vertices_;
  std::vector<int> z_weights_;
  int z_scale_ = 1;
};

}  // namespace toric
