#pragma once

// Batyrev and Seidel elements, their lifts to H^2(X, L), and the identity checks.
//
// An H2Element holds r series (p-basis); a LiftedElement holds m series
// (D-basis of H^2(X, L)). All series are over the q-ring K.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toric_mirror/fan.hpp"
#include "toric_mirror/mirror.hpp"

namespace toric {

using H2Element = std::vector<Series>;
using LiftedElement = std::vector<Series>;

/// D~_j = sum_a m_{a,j} p~_a with p~_a = sum_b (d log q_b / d log y_a) p_b, over K.
std::vector<H2Element> batyrev_elements(const ToricManifold& x, const MirrorData& data);

/// S~_j = exp(-g0^(j)(y(q))) D~_j.
std::vector<H2Element> seidel_elements(const ToricManifold& x, const MirrorData& data);

/// Rows of the transposed inverse Jacobi matrix: S-hat_j[i] = (A^{-1})_{i,j}.
std::vector<LiftedElement> seidel_lifts_jacobi(const SeriesMatrix& jacobi);

/// Closed formula: S-hat_j = e^{-g0^(j)} (D_j - sum_i D_i sum_{d in S(i)}
/// (-1)^{<D_i,d>} <D_j,d> (-<D_i,d>-1)! / prod_{k!=i} <D_k,d>! y^d), then y -> y(q).
std::vector<LiftedElement> seidel_lifts_closed(const ToricManifold& x, const MirrorData& data);

/// Image under H^2(X, L) -> H^2(X), D_i -> sum_a m_{a,i} p_a.
H2Element project(const ToricManifold& x, const LiftedElement& lift);

/// frks(sum_i c_i D_i)_j = sum_i c_i A_{j,i}: the K-cofactor of z_j.
std::vector<Series> frks(const SeriesMatrix& jacobi, const LiftedElement& element);

/// Kernel vectors (<phi, b_j>)_j of the divisor matrix, phi running over the standard basis of M.
IntMatrix character_relations(const Fan& fan);

/// Canonical representatives of K^m modulo the span of v_phi = (<phi, b_j> f_j)_j.
class RelationReducer {
 public:
  RelationReducer(const ToricManifold& x, const std::vector<Series>& f);

  const std::vector<std::vector<Series>>& generators() const { return generators_; }
  /// Lexicographically first rays whose components are eliminated.
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  std::vector<Series> reduce(const std::vector<Series>& v) const;

 private:
  std::vector<std::vector<Series>> generators_;
  std::vector<std::size_t> pivots_;
  std::optional<SeriesMatrix> pivot_inverse_;
};

struct Failure {
  std::size_t j = 0;                // 0-based
  std::optional<std::size_t> k;     // 0-based
  Exponent exp;
  Rational coeff;                   // computed minus expected
};

struct Check {
  std::string name;
  std::vector<Failure> failures;
  bool pass() const { return failures.empty(); }
};

/// <S-hat_j, dw_k> = delta_{jk} z_j in R, for every pair (j, k).
Check verify_degeneration(const ToricManifold& x, const std::vector<LiftedElement>& lifts,
                          const Potential& potential);

struct VerificationReport {
  std::string fan_hash;
  int order = 0;
  std::vector<Check> checks;
  std::vector<std::string> warnings;

  bool pass() const;
  nlohmann::json to_json() const;
};

/// Every identity check of the suite on one manifold.
VerificationReport verify_all(const ToricManifold& x, const MirrorData& data);

}  // namespace toric
