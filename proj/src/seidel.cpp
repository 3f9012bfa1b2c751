#include "toric_mirror/seidel.hpp"

#include <algorithm>

#include "toric_mirror/fan_io.hpp"
#include "toric_mirror/linalg.hpp"

namespace toric {

namespace {

Rational entry(const ToricManifold& x, std::size_t a, std::size_t i) {
  return static_cast<long>(x.basis().entries()[a][i]);
}

Series zero_like(const Series& s) { return Series(s.ring(), s.order()); }

void record(Check& check, const Series& got, const Series& want, std::size_t j,
            std::optional<std::size_t> k = std::nullopt) {
  const Series diff = got - want;
  for (const auto& [e, c] : diff.terms()) check.failures.push_back({j, k, e, c});
}

void record_scalar(Check& check, std::size_t j, std::optional<std::size_t> k, bool ok) {
  if (!ok) check.failures.push_back({j, k, {}, Rational(1)});
}

Series unit_z(const ToricManifold& x, int order, std::size_t j) {
  Exponent e(x.ray_count(), 0);
  e[j] = 1;
  return Series::monomial(x.z_ring(), x.z_order(order), e);
}

Check mirror_round_trip(const ToricManifold& x, const MirrorData& data) {
  Check check{"mirror-round-trip", {}};
  const auto& map = data.map;
  const Ring y = x.y_ring();
  std::vector<Series> exp_g;
  for (const auto& g : map.forward) exp_g.push_back(exp(g));
  for (std::size_t a = 0; a < x.rank(); ++a) {
    // q_a = y_a exp(g_a(y)) evaluated at y = q u(q) must return q_a.
    const Series q_side = exp(map.to_q(map.forward[a])) * map.inverse[a];
    record(check, q_side, Series::constant(q_side.ring(), q_side.order(), 1), a);
    // y_a = q_a u_a(q) evaluated at q = y exp(g(y)) must return y_a.
    const Series y_side = substitute_units(map.inverse[a], y, exp_g) * exp_g[a];
    record(check, y_side, Series::constant(y, y_side.order(), 1), a);
  }
  return check;
}

Check fano_triviality(const ToricManifold& x, const MirrorData& data,
                      const std::vector<LiftedElement>& lifts) {
  Check check{"fano-triviality", {}};
  if (!x.is_fano()) return check;
  for (std::size_t a = 0; a < x.rank(); ++a)
    record(check, data.map.forward[a], zero_like(data.map.forward[a]), a);
  record(check, data.map.h0_defect, zero_like(data.map.h0_defect), 0);
  for (std::size_t j = 0; j < x.ray_count(); ++j) {
    const Series& f = data.potential.f[j];
    record(check, f, Series::constant(f.ring(), f.order(), 1), j);
    for (std::size_t i = 0; i < x.ray_count(); ++i)
      record(check, lifts[j][i], Series::constant(f.ring(), f.order(), i == j ? 1 : 0), j, i);
  }
  return check;
}

Check vertex_vanishing(const ToricManifold& x, const MirrorData& data) {
  Check check{"vertex-vanishing", {}};
  for (auto j : x.polytope_vertices()) {
    const Series& f = data.potential.f[j];
    record(check, f, Series::constant(f.ring(), f.order(), 1), j);
  }
  return check;
}

Check w_batyrev(const ToricManifold& x, const MirrorData& data) {
  Check check{"w-batyrev", {}};
  const auto& gens = x.cone_pair().mori_generators;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto& d = gens[g];
    const Series& f0 = data.potential.f.front();
    Series lhs = Series::constant(f0.ring(), f0.order(), 1);
    for (std::size_t j = 0; j < x.ray_count(); ++j) {
      const auto l = x.divisor_pairing(j, d);
      if (l != 0) lhs *= pow(data.potential.f[j], l);
    }
    Series rhs = Series::constant(f0.ring(), f0.order(), 1);
    for (std::size_t a = 0; a < x.rank(); ++a)
      if (d[a] != 0) rhs *= pow(data.map.inverse[a], d[a]);
    record(check, lhs, rhs, g);
  }
  return check;
}

Check linear_relations(const ToricManifold& x, const std::vector<H2Element>& elements,
                       const std::string& name) {
  Check check{name, {}};
  const auto relations = character_relations(x.fan());
  for (std::size_t phi = 0; phi < relations.size(); ++phi) {
    for (std::size_t b = 0; b < x.rank(); ++b) {
      Series total = zero_like(elements.front()[b]);
      for (std::size_t j = 0; j < x.ray_count(); ++j)
        if (relations[phi][j] != 0) total += elements[j][b] * Rational(static_cast<long>(relations[phi][j]));
      record(check, total, zero_like(total), phi, b);
    }
  }
  return check;
}

Check frks_relations(const ToricManifold& x, const MirrorData& data) {
  Check check{"frks-relations", {}};
  const auto relations = character_relations(x.fan());
  const auto& w = data.potential.w;
  for (std::size_t phi = 0; phi < relations.size(); ++phi) {
    for (std::size_t j = 0; j < x.ray_count(); ++j) {
      Series lhs = zero_like(w[j]);
      for (std::size_t i = 0; i < x.ray_count(); ++i)
        if (relations[phi][i] != 0)
          lhs += log_derivative(w[j], i) * Rational(static_cast<long>(relations[phi][i]));
      record(check, lhs, w[j] * Rational(static_cast<long>(relations[phi][j])), j, phi);
    }
  }
  return check;
}

Check ks_images(const ToricManifold& x, const MirrorData& data, const std::vector<LiftedElement>& lifts) {
  Check check{"ks-images", {}};
  const std::size_t m = x.ray_count();
  const auto& f = data.potential.f;
  const Ring& q = f.front().ring();
  const int order = f.front().order();
  for (std::size_t j = 0; j < m; ++j) {
    const auto image = frks(data.jacobi, lifts[j]);
    LiftedElement scaled;
    for (const auto& c : lifts[j]) scaled.push_back(c * f[j]);
    const auto scaled_image = frks(data.jacobi, scaled);
    for (std::size_t k = 0; k < m; ++k) {
      record(check, image[k], Series::constant(q, order, j == k ? 1 : 0), j, k);
      record(check, scaled_image[k], j == k ? f[j] : Series(q, order), j, k);
    }
  }
  const auto relations = character_relations(x.fan());
  for (std::size_t phi = 0; phi < relations.size(); ++phi) {
    LiftedElement delta;
    for (std::size_t i = 0; i < m; ++i)
      delta.push_back(Series::constant(q, order, static_cast<long>(relations[phi][i])));
    const auto image = frks(data.jacobi, delta);
    for (std::size_t j = 0; j < m; ++j)
      record(check, image[j], f[j] * Rational(static_cast<long>(relations[phi][j])), j, phi);
  }
  return check;
}

Check route_agreement(const std::vector<LiftedElement>& closed, const std::vector<LiftedElement>& jacobi) {
  Check check{"route-agreement", {}};
  for (std::size_t j = 0; j < closed.size(); ++j)
    for (std::size_t i = 0; i < closed[j].size(); ++i) record(check, closed[j][i], jacobi[j][i], j, i);
  return check;
}

Check projection(const ToricManifold& x, const std::vector<LiftedElement>& lifts,
                 const std::vector<H2Element>& seidel) {
  Check check{"projection", {}};
  for (std::size_t j = 0; j < lifts.size(); ++j) {
    const auto image = project(x, lifts[j]);
    for (std::size_t a = 0; a < x.rank(); ++a) record(check, image[a], seidel[j][a], j, a);
  }
  return check;
}

Check gi2_closure(const ToricManifold& x, const MirrorData& data, const std::vector<H2Element>& seidel,
                  const std::vector<H2Element>& batyrev) {
  Check check{"gi2-closure", {}};
  std::vector<H2Element> b;
  for (std::size_t j = 0; j < x.ray_count(); ++j) {
    const Series& f = data.potential.f[j];
    record_scalar(check, j, std::nullopt, f.constant_term() != 0);
    H2Element bj;
    for (const auto& c : seidel[j]) bj.push_back(f * c);
    for (std::size_t a = 0; a < x.rank(); ++a) {
      record(check, bj[a], batyrev[j][a], j, a);
      if (x.is_vertex(j)) record(check, bj[a], seidel[j][a], j, a);
    }
    b.push_back(std::move(bj));
  }
  const Check rel = linear_relations(x, b, "gi2-closure");
  check.failures.insert(check.failures.end(), rel.failures.begin(), rel.failures.end());
  return check;
}

Check relation_reduction(const ToricManifold& x, const MirrorData& data) {
  Check check{"relation-reduction", {}};
  const RelationReducer reducer(x, data.potential.f);
  for (std::size_t phi = 0; phi < reducer.generators().size(); ++phi) {
    const auto r = reducer.reduce(reducer.generators()[phi]);
    for (std::size_t j = 0; j < r.size(); ++j) record(check, r[j], zero_like(r[j]), phi, j);
  }
  return check;
}

}  // namespace

std::vector<H2Element> batyrev_elements(const ToricManifold& x, const MirrorData& data) {
  const std::size_t r = x.rank();
  // jac[a][b] = d log q_b / d log y_a over K.
  std::vector<std::vector<Series>> jac;
  for (std::size_t a = 0; a < r; ++a) {
    std::vector<Series> row;
    for (std::size_t b = 0; b < r; ++b) {
      Series s = log_derivative(data.map.forward[b], a);
      if (a == b) s += Series::constant(s.ring(), s.order(), 1);
      row.push_back(data.map.to_q(s));
    }
    jac.push_back(std::move(row));
  }
  std::vector<H2Element> out;
  for (std::size_t j = 0; j < x.ray_count(); ++j) {
    H2Element d;
    for (std::size_t b = 0; b < r; ++b) {
      Series c = zero_like(jac[0][b]);
      for (std::size_t a = 0; a < r; ++a)
        if (entry(x, a, j) != 0) c += jac[a][b] * entry(x, a, j);
      d.push_back(std::move(c));
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<H2Element> seidel_elements(const ToricManifold& x, const MirrorData& data) {
  auto out = batyrev_elements(x, data);
  for (std::size_t j = 0; j < out.size(); ++j) {
    const Series factor = exp(-data.map.to_q(data.g0[j]));
    for (auto& c : out[j]) c = factor * c;
  }
  return out;
}

std::vector<LiftedElement> seidel_lifts_jacobi(const SeriesMatrix& jacobi) {
  const SeriesMatrix inv = matrix_invert(jacobi);
  std::vector<LiftedElement> out(inv.rows());
  for (std::size_t j = 0; j < inv.cols(); ++j)
    for (std::size_t i = 0; i < inv.rows(); ++i) out[j].push_back(inv.at(i, j));
  return out;
}

std::vector<LiftedElement> seidel_lifts_closed(const ToricManifold& x, const MirrorData& data) {
  const std::size_t m = x.ray_count();
  const int order = data.order;
  const Ring y = x.y_ring();
  // Classes d in S(i): <c1,d> = 0, <D_i,d> < 0, <D_k,d> >= 0 for k != i.
  std::vector<std::vector<std::pair<IntVector, Rational>>> terms(m);
  for (const auto& d : x.effective_classes(order)) {
    if (x.c1_pairing(d) != 0) continue;
    for (std::size_t i = 0; i < m; ++i) {
      const auto li = x.divisor_pairing(i, d);
      if (li >= 0) continue;
      Rational c = factorial(-li - 1);
      bool admissible = true;
      for (std::size_t k = 0; k < m && admissible; ++k) {
        if (k == i) continue;
        const auto lk = x.divisor_pairing(k, d);
        if (lk < 0) admissible = false;
        else c /= factorial(lk);
      }
      if (!admissible) continue;
      if (li % 2 != 0) c = -c;
      terms[i].emplace_back(d, c);
    }
  }
  std::vector<LiftedElement> out;
  for (std::size_t j = 0; j < m; ++j) {
    const Series factor = exp(-data.g0[j]);
    LiftedElement lift;
    for (std::size_t i = 0; i < m; ++i) {
      Series inner = Series::constant(y, order, i == j ? 1 : 0);
      for (const auto& [d, c] : terms[i]) {
        const auto lj = x.divisor_pairing(j, d);
        if (lj != 0) inner.add_term(Exponent(d.begin(), d.end()), -c * Rational(static_cast<long>(lj)));
      }
      lift.push_back(data.map.to_q(factor * inner));
    }
    out.push_back(std::move(lift));
  }
  return out;
}

H2Element project(const ToricManifold& x, const LiftedElement& lift) {
  H2Element out;
  for (std::size_t a = 0; a < x.rank(); ++a) {
    Series s = zero_like(lift.front());
    for (std::size_t i = 0; i < lift.size(); ++i)
      if (entry(x, a, i) != 0) s += lift[i] * entry(x, a, i);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Series> frks(const SeriesMatrix& jacobi, const LiftedElement& element) {
  if (element.size() != jacobi.cols()) throw std::invalid_argument("frks: element has the wrong length");
  std::vector<Series> out;
  for (std::size_t j = 0; j < jacobi.rows(); ++j) {
    Series s(jacobi.ring(), jacobi.order());
    for (std::size_t i = 0; i < jacobi.cols(); ++i) s += element[i] * jacobi.at(j, i);
    out.push_back(std::move(s));
  }
  return out;
}

IntMatrix character_relations(const Fan& fan) {
  IntMatrix out(fan.dim, IntVector(fan.rays.size()));
  for (std::size_t phi = 0; phi < fan.dim; ++phi)
    for (std::size_t j = 0; j < fan.rays.size(); ++j) out[phi][j] = fan.rays[j][phi];
  return out;
}

RelationReducer::RelationReducer(const ToricManifold& x, const std::vector<Series>& f) {
  const auto relations = character_relations(x.fan());
  const std::size_t n = relations.size();
  for (std::size_t phi = 0; phi < n; ++phi) {
    std::vector<Series> v;
    for (std::size_t j = 0; j < f.size(); ++j) v.push_back(f[j] * Rational(static_cast<long>(relations[phi][j])));
    generators_.push_back(std::move(v));
  }
  // Greedy choice of rows gives the lexicographically first independent set.
  RationalMatrix chosen;
  for (std::size_t j = 0; j < x.ray_count() && pivots_.size() < n; ++j) {
    auto trial = chosen;
    trial.push_back(to_rational(x.fan().rays[j]));
    if (linalg::rank(trial) == trial.size()) {
      chosen = std::move(trial);
      pivots_.push_back(j);
    }
  }
  SeriesMatrix vp(n, n, f.front().ring(), f.front().order());
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t phi = 0; phi < n; ++phi) vp.at(p, phi) = generators_[phi][pivots_[p]];
  pivot_inverse_ = matrix_invert(vp);
}

std::vector<Series> RelationReducer::reduce(const std::vector<Series>& v) const {
  const std::size_t n = pivots_.size();
  std::vector<Series> out = v;
  for (std::size_t phi = 0; phi < n; ++phi) {
    Series c = zero_like(v.front());
    for (std::size_t p = 0; p < n; ++p) c += pivot_inverse_->at(phi, p) * v[pivots_[p]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] -= c * generators_[phi][j];
  }
  return out;
}

Check verify_degeneration(const ToricManifold& x, const std::vector<LiftedElement>& lifts,
                          const Potential& potential) {
  Check check{"degeneration", {}};
  const std::size_t m = x.ray_count();
  const int order = potential.f.front().order();
  std::vector<std::vector<Series>> dw(m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i) dw[k].push_back(log_derivative(potential.w[k], i));
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Series> coeffs;
    for (std::size_t i = 0; i < m; ++i) coeffs.push_back(x.to_z(lifts[j][i]));
    for (std::size_t k = 0; k < m; ++k) {
      Series pairing(x.z_ring(), x.z_order(order));
      for (std::size_t i = 0; i < m; ++i) pairing += coeffs[i] * dw[k][i];
      record(check, pairing, j == k ? unit_z(x, order, j) : Series(x.z_ring(), x.z_order(order)), j, k);
    }
  }
  return check;
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json out;
  out["fan_hash"] = fan_hash;
  out["order"] = order;
  out["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : c.failures) {
      failures.push_back({{"j", f.j + 1},
                          {"k", f.k ? nlohmann::json(*f.k + 1) : nlohmann::json(nullptr)},
                          {"exp", f.exp},
                          {"coeff", to_string(f.coeff)}});
    }
    out["checks"].push_back({{"name", c.name}, {"pass", c.pass()}, {"failures", failures}});
  }
  if (!warnings.empty()) out["warnings"] = warnings;
  return out;
}

VerificationReport verify_all(const ToricManifold& x, const MirrorData& data) {
  VerificationReport report;
  report.fan_hash = fan_hash(x);
  report.order = data.order;
  if (!data.map.h0_defect.is_zero())
    report.warnings.push_back("scalar part of the 1/z asymptotics is nonzero: " +
                              format_series(data.map.h0_defect, "y"));

  const auto closed = seidel_lifts_closed(x, data);
  const auto jacobi = seidel_lifts_jacobi(data.jacobi);
  const auto batyrev = batyrev_elements(x, data);
  const auto seidel = seidel_elements(x, data);

  report.checks.push_back(mirror_round_trip(x, data));
  report.checks.push_back(verify_degeneration(x, closed, data.potential));
  report.checks.push_back(w_batyrev(x, data));
  report.checks.push_back(linear_relations(x, batyrev, "linear-relations"));
  report.checks.push_back(frks_relations(x, data));
  report.checks.push_back(ks_images(x, data, closed));
  report.checks.push_back(route_agreement(closed, jacobi));
  report.checks.push_back(projection(x, closed, seidel));
  report.checks.push_back(gi2_closure(x, data, seidel, batyrev));
  report.checks.push_back(relation_reduction(x, data));
  report.checks.push_back(vertex_vanishing(x, data));
  report.checks.push_back(fano_triviality(x, data, closed));
  return report;
}

}  // namespace toric
