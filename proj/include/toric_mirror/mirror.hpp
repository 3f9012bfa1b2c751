#pragma once

// Mirror map, hypergeometric series g0, correction terms and the potential.
//
// Series in y live in ToricManifold::y_ring(), series in q in k_ring(), both
// graded by nef degree. The mirror map is log q_a = log y_a + g_a(y).

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "toric_mirror/fan.hpp"
#include "toric_mirror/series.hpp"

namespace toric {

struct Asymptotics {
  std::vector<Series> g;  // H^2 part of the 1/z coefficient, p-basis
  Series g00;             // scalar part of the 1/z coefficient
};

/// 1/z asymptotics of the I-function, summed over d in NE with nef degree <= order.
Asymptotics ifunction_asymptotics(const ToricManifold& x, int order);

/// Hypergeometric series g0^(j)(y); j is 0-based.
Series g0_series(const ToricManifold& x, std::size_t j, int order);

struct MirrorMap {
  std::vector<Series> forward;  // g_a(y)
  std::vector<Series> inverse;  // u_a(q) with y_a = q_a u_a(q)
  Series h0_defect;             // g00(y); nonzero values are reported, never used

  /// Pushes a y-series to the q-ring through y_a = q_a u_a(q).
  Series to_q(const Series& y_series) const;
};

MirrorMap mirror_map(const ToricManifold& x, int order);

/// f_j(q) = exp(g0^(j)(y(q))).
std::vector<Series> correction_terms(const ToricManifold& x, const MirrorMap& map);

struct Potential {
  std::vector<Series> f;  // over K
  std::vector<Series> w;  // w_j = f_j z_j over R
  Series total;           // W = sum_j w_j
};

/// Assembles W from any list of unit series (lets tests corrupt f).
Potential assemble_potential(const ToricManifold& x, std::vector<Series> f);

/// Raised when a requested open invariant is not encoded by the correction terms.
class OutOfModel : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// n_{beta_i + d}: coefficient of q^d in f_i (i 0-based).
Rational open_gw(const ToricManifold& x, const std::vector<Series>& f, std::size_t i,
                 const IntVector& d);

/// A_{k,i} = delta_{ik} f_k + sum_a m_{a,i} q_a df_k/dq_a, so that z_i dw_k/dz_i = A_{k,i} z_k.
SeriesMatrix jacobi_matrix(const ToricManifold& x, const std::vector<Series>& f);

/// Everything downstream needs, computed once.
struct MirrorData {
  int order = 0;
  Asymptotics asymptotics;
  std::vector<Series> g0;  // over y
  MirrorMap map;
  Potential potential;
  SeriesMatrix jacobi;

  static MirrorData compute(const ToricManifold& x, int order);
};

}  // namespace toric
