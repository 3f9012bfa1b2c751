#include "toric_mirror/cone.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "toric_mirror/linalg.hpp"

namespace toric {

namespace {

struct Ray {
  RationalVector v;
  std::vector<bool> tight;  // constraint k is active at this ray
};

Rational evaluate(const RationalVector& g, const RationalVector& x) { return linalg::dot(g, x); }

}  // namespace

DualCone dual_cone(const IntMatrix& generators, std::size_t dim) {
  const RationalMatrix g = linalg::to_rational(generators);
  for (const auto& row : g)
    if (row.size() != dim) throw std::invalid_argument("generator has the wrong dimension");

  // Initial simplicial cone from the first `dim` independent constraints.
  std::vector<std::size_t> basis;
  RationalMatrix chosen;
  for (std::size_t k = 0; k < g.size() && basis.size() < dim; ++k) {
    chosen.push_back(g[k]);
    if (linalg::rank(chosen) == chosen.size()) basis.push_back(k);
    else chosen.pop_back();
  }
  if (basis.size() < dim) throw std::invalid_argument("cone generators do not span the space");

  const RationalMatrix inv = linalg::inverse(chosen);  // columns are the initial rays
  std::vector<Ray> rays;
  for (std::size_t c = 0; c < dim; ++c) {
    Ray r;
    for (std::size_t i = 0; i < dim; ++i) r.v.push_back(inv[i][c]);
    r.tight.assign(g.size(), false);
    rays.push_back(std::move(r));
  }
  std::vector<bool> processed(g.size(), false);
  for (auto k : basis) {
    processed[k] = true;
    for (auto& r : rays) r.tight[k] = evaluate(g[k], r.v) == 0;
  }

  for (std::size_t k = 0; k < g.size(); ++k) {
    if (processed[k]) continue;
    std::vector<Ray> pos, neg, zero;
    std::vector<Rational> pos_val, neg_val;
    for (auto& r : rays) {
      const Rational val = evaluate(g[k], r.v);
      r.tight[k] = val == 0;
      if (val > 0) { pos.push_back(r); pos_val.push_back(val); }
      else if (val < 0) { neg.push_back(r); neg_val.push_back(val); }
      else zero.push_back(r);
    }
    std::vector<Ray> next = pos;
    next.insert(next.end(), zero.begin(), zero.end());
    for (std::size_t a = 0; a < pos.size(); ++a) {
      for (std::size_t b = 0; b < neg.size(); ++b) {
        // Adjacent iff the constraints tight at both have rank dim - 2.
        RationalMatrix common;
        for (std::size_t t = 0; t < g.size(); ++t)
          if (processed[t] && pos[a].tight[t] && neg[b].tight[t]) common.push_back(g[t]);
        if (dim >= 2 && linalg::rank(common) != dim - 2) continue;
        Ray r;
        r.v.resize(dim);
        for (std::size_t i = 0; i < dim; ++i)
          r.v[i] = pos_val[a] * neg[b].v[i] - neg_val[b] * pos[a].v[i];
        r.tight.resize(g.size());
        for (std::size_t t = 0; t < g.size(); ++t)
          r.tight[t] = (processed[t] || t == k) && evaluate(g[t], r.v) == 0;
        next.push_back(std::move(r));
      }
    }
    processed[k] = true;
    rays = std::move(next);
  }

  std::set<IntVector> unique;
  for (const auto& r : rays) {
    IntVector p = primitive_integer(r.v);
    if (std::any_of(p.begin(), p.end(), [](auto x) { return x != 0; })) unique.insert(p);
  }
  DualCone out;
  out.rays.assign(unique.begin(), unique.end());
  out.full_dimensional = linalg::rank(linalg::to_rational(out.rays)) == dim;
  return out;
}

IntMatrix extreme_generators(const IntMatrix& generators, std::size_t dim) {
  // The extreme rays of a full-dimensional pointed cone are the facets of its dual.
  const DualCone dual = dual_cone(generators, dim);
  if (!dual.full_dimensional) throw std::invalid_argument("cone is not pointed");
  const DualCone back = dual_cone(dual.rays, dim);
  return back.rays;
}

}  // namespace toric
