#include "toric_mirror/fan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "toric_mirror/cone.hpp"
#include "toric_mirror/linalg.hpp"

namespace toric {

namespace {

constexpr int kNefSearchHeight = 8;

std::string idx(std::size_t i) { return std::to_string(i + 1); }

RationalMatrix cone_columns(const Fan& fan, const std::vector<std::size_t>& cone) {
  RationalMatrix b(fan.dim, RationalVector(cone.size()));
  for (std::size_t c = 0; c < cone.size(); ++c)
    for (std::size_t k = 0; k < fan.dim; ++k) b[k][c] = static_cast<long>(fan.rays[cone[c]][k]);
  return b;
}

std::int64_t cone_determinant(const Fan& fan, const std::vector<std::size_t>& cone) {
  IntMatrix b(fan.dim, IntVector(fan.dim));
  for (std::size_t c = 0; c < fan.dim; ++c)
    for (std::size_t k = 0; k < fan.dim; ++k) b[k][c] = fan.rays[cone[c]][k];
  return linalg::determinant(b);
}

// Coordinates of ray j in the basis of a unimodular cone.
IntVector coordinates_in_cone(const Fan& fan, const std::vector<std::size_t>& cone, std::size_t j) {
  const auto x = linalg::solve(cone_columns(fan, cone), to_rational(fan.rays[j]));
  if (!x) throw FanGateError(Gate::smooth, "maximal cone does not span the lattice");
  IntVector out;
  for (const auto& v : *x) {
    if (v.get_den() != 1) throw FanGateError(Gate::smooth, "maximal cone is not unimodular");
    out.push_back(mpz_class(v.get_num()).get_si());
  }
  return out;
}

using WallMap = std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>>;

// wall (sorted ray set) -> list of (cone index, opposite ray)
WallMap collect_walls(const Fan& fan) {
  WallMap walls;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& cone = fan.max_cones[c];
    for (std::size_t drop = 0; drop < cone.size(); ++drop) {
      std::vector<std::size_t> wall;
      for (std::size_t k = 0; k < cone.size(); ++k)
        if (k != drop) wall.push_back(cone[k]);
      std::sort(wall.begin(), wall.end());
      walls[wall].emplace_back(c, cone[drop]);
    }
  }
  return walls;
}

std::optional<std::string> first_non_smooth(const Fan& fan) {
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto det = cone_determinant(fan, fan.max_cones[c]);
    if (det != 1 && det != -1)
      return "maximal cone " + idx(c) + " has determinant " + std::to_string(det);
  }
  return std::nullopt;
}

std::optional<std::string> first_incomplete(const Fan& fan) {
  if (fan.max_cones.empty()) return "fan has no maximal cones";
  for (const auto& [wall, owners] : collect_walls(fan)) {
    if (owners.size() != 2) {
      std::string w;
      for (auto i : wall) w += (w.empty() ? "" : ",") + idx(i);
      return "wall {" + w + "} lies in " + std::to_string(owners.size()) +
             " maximal cones (expected 2)";
    }
  }
  return std::nullopt;
}

std::int64_t sum_of(const IntVector& v) { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); }

IntMatrix wall_coordinates(const IntMatrix& walls, const DivisorMatrix& basis) {
  IntMatrix out;
  for (const auto& w : walls) out.push_back(basis.curve_coordinates(w));
  return out;
}

std::optional<std::string> first_non_nef_row(const IntMatrix& walls, const DivisorMatrix& basis) {
  for (const auto& w : walls) {
    const IntVector d = basis.curve_coordinates(w);
    for (std::size_t a = 0; a < d.size(); ++a) {
      if (d[a] < 0) {
        std::string l;
        for (auto x : w) l += (l.empty() ? "" : ",") + std::to_string(x);
        return "divisor matrix row " + idx(a) + " is not nef (pairs to " + std::to_string(d[a]) +
               " with wall class (" + l + "))";
      }
    }
  }
  return std::nullopt;
}

}  // namespace

const char* gate_name(Gate gate) {
  switch (gate) {
    case Gate::smooth: return "smooth";
    case Gate::complete: return "complete";
    case Gate::projective: return "projective";
    case Gate::semi_positive: return "semi-positive";
    case Gate::divisor_matrix: return "divisor-matrix";
  }
  return "unknown";
}

void check_structure(const Fan& fan) {
  if (fan.dim == 0) throw FanStructureError("fan dimension must be positive");
  if (fan.rays.size() <= fan.dim)
    throw FanStructureError("a complete fan in dimension " + std::to_string(fan.dim) +
                            " needs at least " + std::to_string(fan.dim + 1) + " rays");
  std::set<IntVector> seen;
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const auto& b = fan.rays[i];
    if (b.size() != fan.dim)
      throw FanStructureError("ray " + idx(i) + " has " + std::to_string(b.size()) +
                              " entries, expected " + std::to_string(fan.dim));
    const auto g = gcd_of(b);
    if (g == 0) throw FanStructureError("ray " + idx(i) + " is zero");
    if (g != 1) throw FanStructureError("ray " + idx(i) + " not primitive");
    if (!seen.insert(b).second) throw FanStructureError("ray " + idx(i) + " is repeated");
  }
  if (fan.max_cones.empty()) throw FanStructureError("fan has no maximal cones");
  std::set<std::vector<std::size_t>> cones;
  std::vector<bool> used(fan.rays.size(), false);
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    auto cone = fan.max_cones[c];
    if (cone.size() != fan.dim)
      throw FanStructureError("maximal cone " + idx(c) + " has " + std::to_string(cone.size()) +
                              " rays, expected " + std::to_string(fan.dim));
    for (auto i : cone) {
      if (i >= fan.rays.size())
        throw FanStructureError("maximal cone " + idx(c) + " refers to missing ray " + idx(i));
      used[i] = true;
    }
    std::sort(cone.begin(), cone.end());
    if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
      throw FanStructureError("maximal cone " + idx(c) + " repeats a ray");
    if (!cones.insert(cone).second)
      throw FanStructureError("maximal cone " + idx(c) + " is repeated");
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) throw FanStructureError("ray " + idx(i) + " lies in no maximal cone");
}

FanReport validate(const Fan& fan) {
  check_structure(fan);
  FanReport r;
  r.smooth = !first_non_smooth(fan);
  r.complete = !first_incomplete(fan);
  if (!r.smooth || !r.complete) return r;
  const IntMatrix walls = wall_curves(fan);
  const DivisorMatrix base = cone_splitting(fan);
  const DualCone nef = dual_cone(wall_coordinates(walls, base), fan.picard_rank());
  r.projective = nef.full_dimensional;
  r.semi_positive = std::all_of(walls.begin(), walls.end(), [](const auto& w) { return sum_of(w) >= 0; });
  r.fano = std::all_of(walls.begin(), walls.end(), [](const auto& w) { return sum_of(w) > 0; });
  return r;
}

IntMatrix wall_curves(const Fan& fan) {
  std::set<IntVector> classes;
  for (const auto& [wall, owners] : collect_walls(fan)) {
    if (owners.size() != 2)
      throw FanGateError(Gate::complete, *first_incomplete(fan));
    const auto& [cone_idx, opposite] = owners[0];
    const std::size_t other = owners[1].second;
    const auto& cone = fan.max_cones[cone_idx];
    const IntVector x = coordinates_in_cone(fan, cone, other);
    IntVector l(fan.rays.size(), 0);
    l[other] = 1;
    for (std::size_t k = 0; k < cone.size(); ++k) l[cone[k]] -= x[k];
    if (l[opposite] != 1) throw FanGateError(Gate::smooth, "wall relation is not primitive");
    classes.insert(std::move(l));
  }
  return {classes.begin(), classes.end()};
}

// ---------------------------------------------------------------- DivisorMatrix

DivisorMatrix::DivisorMatrix(const Fan& fan, IntMatrix entries) : entries_(std::move(entries)) {
  const std::size_t m = fan.rays.size();
  const std::size_t r = fan.picard_rank();
  if (entries_.size() != r)
    throw FanGateError(Gate::divisor_matrix, "divisor matrix needs " + std::to_string(r) + " rows");
  for (std::size_t a = 0; a < r; ++a) {
    if (entries_[a].size() != m)
      throw FanGateError(Gate::divisor_matrix,
                         "divisor matrix row " + idx(a) + " needs " + std::to_string(m) + " entries");
    for (std::size_t k = 0; k < fan.dim; ++k) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < m; ++i) s += entries_[a][i] * fan.rays[i][k];
      if (s != 0)
        throw FanGateError(Gate::divisor_matrix,
                           "divisor matrix row " + idx(a) + " does not annihilate the rays");
    }
  }
  // Rows lie in the relation lattice, whose basis is {e_i - coords(b_i)} for i outside
  // the first cone; the matrix is surjective iff its restriction T to those columns is unimodular.
  const auto& sigma = fan.max_cones.front();
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < m; ++i)
    if (std::find(sigma.begin(), sigma.end(), i) == sigma.end()) outside.push_back(i);
  IntMatrix t(r, IntVector(r));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) t[a][b] = entries_[a][outside[b]];
  const auto det = linalg::determinant(t);
  if (det != 1 && det != -1)
    throw FanGateError(Gate::divisor_matrix, "divisor matrix is not right-invertible over Z");
  const RationalMatrix t_inv = linalg::inverse(linalg::to_rational(t));
  right_inverse_.assign(m, IntVector(r, 0));
  for (std::size_t b = 0; b < r; ++b)
    for (std::size_t a = 0; a < r; ++a)
      right_inverse_[outside[b]][a] = mpz_class(t_inv[b][a].get_num()).get_si();
}

IntVector DivisorMatrix::curve_coordinates(const IntVector& pairings) const {
  const std::size_t r = rank();
  IntVector d(r, 0);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t i = 0; i < pairings.size(); ++i) d[a] += right_inverse_[i][a] * pairings[i];
  return d;
}

IntVector DivisorMatrix::curve_pairings(const IntVector& coords) const {
  IntVector l(ray_count(), 0);
  for (std::size_t a = 0; a < coords.size(); ++a)
    for (std::size_t i = 0; i < l.size(); ++i) l[i] += entries_[a][i] * coords[a];
  return l;
}

RationalVector DivisorMatrix::divisor_class(const RationalVector& lift) const {
  RationalVector x(rank());
  for (std::size_t a = 0; a < rank(); ++a)
    for (std::size_t i = 0; i < lift.size(); ++i) x[a] += static_cast<long>(entries_[a][i]) * lift[i];
  return x;
}

DivisorMatrix cone_splitting(const Fan& fan) {
  const auto& sigma = fan.max_cones.front();
  IntMatrix rows;
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    if (std::find(sigma.begin(), sigma.end(), i) != sigma.end()) continue;
    const IntVector x = coordinates_in_cone(fan, sigma, i);
    IntVector row(fan.rays.size(), 0);
    row[i] = 1;
    for (std::size_t k = 0; k < sigma.size(); ++k) row[sigma[k]] -= x[k];
    rows.push_back(std::move(row));
  }
  return DivisorMatrix(fan, std::move(rows));
}

// ---------------------------------------------------------------- cones

bool ConePair::in_mori(const IntVector& d) const {
  for (const auto& g : nef_generators) {
    std::int64_t s = 0;
    for (std::size_t a = 0; a < d.size(); ++a) s += g[a] * d[a];
    if (s < 0) return false;
  }
  return true;
}

bool ConePair::in_nef(const RationalVector& x) const {
  for (const auto& c : mori_generators)
    if (linalg::dot(x, to_rational(c)) < 0) return false;
  return true;
}

bool ConePair::in_nef_interior(const RationalVector& x) const {
  if (!nef_full_dimensional) return false;
  for (const auto& c : mori_generators)
    if (linalg::dot(x, to_rational(c)) <= 0) return false;
  return true;
}

ConePair cones(const Fan& fan, const DivisorMatrix& basis) {
  const std::size_t r = basis.rank();
  const IntMatrix coords = wall_coordinates(wall_curves(fan), basis);
  const DualCone nef = dual_cone(coords, r);
  if (!nef.full_dimensional)
    throw FanGateError(Gate::projective, "nef cone is not full-dimensional: the fan is not projective");
  ConePair out;
  out.nef_generators = nef.rays;
  out.nef_full_dimensional = true;
  out.mori_generators = dual_cone(nef.rays, r).rays;
  return out;
}

DivisorMatrix divisor_matrix(const Fan& fan, const std::optional<IntMatrix>& user_matrix) {
  const IntMatrix walls = wall_curves(fan);
  if (user_matrix) {
    DivisorMatrix dm(fan, *user_matrix);
    if (auto bad = first_non_nef_row(walls, dm)) throw FanGateError(Gate::divisor_matrix, *bad);
    return dm;
  }
  const DivisorMatrix base = cone_splitting(fan);
  if (!first_non_nef_row(walls, base)) return base;

  const std::size_t r = base.rank();
  const ConePair cp = cones(fan, base);
  const std::size_t g = cp.nef_generators.size();

  // Primitive vectors sum_k lambda_k n_k with 0 <= lambda_k <= height, smallest first.
  std::map<IntVector, std::pair<long, IntVector>> best;  // primitive -> (height, lambda)
  IntVector lambda(g, 0);
  std::function<void(std::size_t)> walk = [&](std::size_t k) {
    if (k == g) {
      IntVector v(r, 0);
      long h = 0;
      for (std::size_t t = 0; t < g; ++t) {
        h += lambda[t];
        for (std::size_t a = 0; a < r; ++a) v[a] += lambda[t] * cp.nef_generators[t][a];
      }
      if (h == 0 || gcd_of(v) != 1) return;
      auto it = best.find(v);
      if (it == best.end() || std::make_pair(h, lambda) < it->second) best[v] = {h, lambda};
      return;
    }
    for (int c = 0; c <= kNefSearchHeight; ++c) {
      lambda[k] = c;
      walk(k + 1);
    }
    lambda[k] = 0;
  };
  walk(0);
  std::vector<std::pair<std::pair<long, IntVector>, IntVector>> ranked;
  for (const auto& [v, key] : best) ranked.push_back({key, v});
  std::sort(ranked.begin(), ranked.end());
  IntMatrix candidates;
  for (const auto& item : ranked) candidates.push_back(item.second);

  // Subsets in order of their largest index, so small-height bases are found first.
  std::vector<std::size_t> pick(r);
  std::function<std::optional<IntMatrix>(std::size_t, std::size_t)> choose =
      [&](std::size_t slot, std::size_t limit) -> std::optional<IntMatrix> {
    if (slot == r) {
      IntMatrix p;
      for (auto i : pick) p.push_back(candidates[i]);
      const auto det = linalg::determinant(p);
      if (det == 1 || det == -1) return p;
      return std::nullopt;
    }
    for (std::size_t i = slot == 0 ? 0 : pick[slot - 1] + 1; i < limit; ++i) {
      pick[slot] = i;
      if (auto hit = choose(slot + 1, limit)) return hit;
    }
    return std::nullopt;
  };
  std::optional<IntMatrix> found;
  for (std::size_t top = r - 1; top < candidates.size() && !found; ++top) {
    pick[r - 1] = top;
    if (r == 1) {
      found = choose(1, 0);
    } else {
      std::function<std::optional<IntMatrix>(std::size_t)> lower =
          [&](std::size_t slot) -> std::optional<IntMatrix> {
        if (slot == r - 1) return choose(r, 0);
        for (std::size_t i = slot == 0 ? 0 : pick[slot - 1] + 1; i < top; ++i) {
          pick[slot] = i;
          if (auto hit = lower(slot + 1)) return hit;
        }
        return std::nullopt;
      };
      found = lower(0);
    }
  }
  if (!found)
    throw FanGateError(Gate::divisor_matrix,
                       "no unimodular nef basis among nef-generator combinations of height <= " +
                           std::to_string(kNefSearchHeight) + "; supply [basis] divisor_matrix");

  // New basis p'_a = sum_b P_ab p_b, so the new divisor matrix is P^{-T} M.
  const RationalMatrix p_inv = linalg::inverse(linalg::to_rational(*found));
  IntMatrix rows(r, IntVector(fan.rays.size(), 0));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
      Rational s = 0;
      for (std::size_t b = 0; b < r; ++b) s += p_inv[b][a] * static_cast<long>(base.entries()[b][i]);
      rows[a][i] = mpz_class(s.get_num()).get_si();
    }
  DivisorMatrix dm(fan, std::move(rows));
  if (auto bad = first_non_nef_row(walls, dm)) throw FanGateError(Gate::divisor_matrix, *bad);
  return dm;
}

IntMatrix enumerate_ne(const ConePair& cones, std::size_t rank, int order) {
  IntMatrix out;
  IntVector d(rank, 0);
  std::function<void(std::size_t, int)> walk = [&](std::size_t a, int budget) {
    if (a == rank) {
      if (cones.in_mori(d)) out.push_back(d);
      return;
    }
    for (int k = 0; k <= budget; ++k) {
      d[a] = k;
      walk(a + 1, budget - k);
    }
    d[a] = 0;
  };
  walk(0, order);
  return out;
}

std::vector<std::size_t> fan_polytope_vertices(const Fan& fan) {
  const std::size_t m = fan.rays.size();
  const std::size_t n = fan.dim;
  auto lifted = [&](std::size_t j) {
    RationalVector v = to_rational(fan.rays[j]);
    v.emplace_back(1);
    return v;
  };
  std::vector<std::size_t> vertices;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) others.push_back(j);
    bool inside = false;
    // Caratheodory: b_i lies in the hull iff it is a convex combination of
    // at most n+1 affinely independent other rays.
    std::vector<std::size_t> subset;
    std::function<void(std::size_t)> walk = [&](std::size_t start) {
      if (inside) return;
      if (!subset.empty()) {
        RationalMatrix a(n + 1, RationalVector(subset.size()));
        for (std::size_t c = 0; c < subset.size(); ++c) {
          const auto col = lifted(subset[c]);
          for (std::size_t k = 0; k <= n; ++k) a[k][c] = col[k];
        }
        if (linalg::rank(a) == subset.size()) {
          if (auto x = linalg::solve(a, lifted(i))) {
            if (std::all_of(x->begin(), x->end(), [](const Rational& t) { return t >= 0; })) {
              inside = true;
              return;
            }
          }
        } else {
          return;  // supersets of dependent sets are dependent
        }
      }
      if (subset.size() == n + 1) return;
      for (std::size_t k = start; k < others.size(); ++k) {
        subset.push_back(others[k]);
        walk(k + 1);
        subset.pop_back();
      }
    };
    walk(0);
    if (!inside) vertices.push_back(i);
  }
  return vertices;
}

// ---------------------------------------------------------------- ToricManifold

ToricManifold ToricManifold::create(Fan fan, const std::optional<IntMatrix>& user_matrix) {
  check_structure(fan);
  if (auto bad = first_non_smooth(fan)) throw FanGateError(Gate::smooth, "fan is not smooth: " + *bad);
  if (auto bad = first_incomplete(fan))
    throw FanGateError(Gate::complete, "fan is not complete: " + *bad);

  ToricManifold tm;
  tm.walls_ = wall_curves(fan);
  tm.report_ = validate(fan);
  if (!tm.report_.projective)
    throw FanGateError(Gate::projective, "fan is not projective: the nef cone has empty interior");
  for (const auto& w : tm.walls_) {
    if (sum_of(w) < 0) {
      std::string l;
      for (auto x : w) l += (l.empty() ? "" : ",") + std::to_string(x);
      throw FanGateError(Gate::semi_positive,
                         "c1(X) is not semi-positive: <c1, C> = " + std::to_string(sum_of(w)) +
                             " for the wall class (" + l +
                             "); the potential W = sum f_j z_j requires a semi-positive toric manifold");
    }
  }
  tm.basis_ = divisor_matrix(fan, user_matrix);
  tm.cones_ = cones(fan, tm.basis_);
  tm.vertices_ = fan_polytope_vertices(fan);
  tm.fan_ = std::move(fan);

  // z-grading: w = sum over maximal cones of the slack vectors of the vertices of the
  // polytope of the ample class p_1 + ... + p_r; then kappa(w) = (#cones) * (p_1 + ... + p_r).
  const Fan& f = tm.fan_;
  const std::size_t m = f.rays.size();
  const std::size_t r = tm.rank();
  IntVector lift(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < r; ++a) lift[i] += tm.basis_.right_inverse()[i][a];
  IntVector w(m, 0);
  for (const auto& cone : f.max_cones) {
    RationalMatrix rows(f.dim, RationalVector(f.dim));
    RationalVector rhs(f.dim);
    for (std::size_t k = 0; k < f.dim; ++k) {
      for (std::size_t t = 0; t < f.dim; ++t) rows[k][t] = static_cast<long>(f.rays[cone[k]][t]);
      rhs[k] = -static_cast<long>(lift[cone[k]]);
    }
    const RationalVector u = *linalg::solve(rows, rhs);
    for (std::size_t i = 0; i < m; ++i) {
      Rational s = static_cast<long>(lift[i]);
      for (std::size_t t = 0; t < f.dim; ++t) s += static_cast<long>(f.rays[i][t]) * u[t];
      w[i] += mpz_class(s.get_num()).get_si();
    }
  }
  std::int64_t g = static_cast<std::int64_t>(f.max_cones.size());
  for (auto x : w) g = std::gcd(g, x);
  tm.z_scale_ = static_cast<int>(static_cast<std::int64_t>(f.max_cones.size()) / g);
  for (auto x : w) {
    if (x <= 0) throw std::logic_error("z-grading weight is not positive");
    tm.z_weights_.push_back(static_cast<int>(x / g));
  }
  return tm;
}

bool ToricManifold::is_vertex(std::size_t i) const {
  return std::find(vertices_.begin(), vertices_.end(), i) != vertices_.end();
}

std::int64_t ToricManifold::divisor_pairing(std::size_t i, const IntVector& d) const {
  std::int64_t s = 0;
  for (std::size_t a = 0; a < d.size(); ++a) s += basis_.entries()[a][i] * d[a];
  return s;
}

std::int64_t ToricManifold::c1_pairing(const IntVector& d) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < ray_count(); ++i) s += divisor_pairing(i, d);
  return s;
}

IntMatrix ToricManifold::effective_classes(int order) const {
  return enumerate_ne(cones_, rank(), order);
}

Ring ToricManifold::k_ring() const { return Ring::orthant("q", rank()); }
Ring ToricManifold::y_ring() const { return Ring::orthant("y", rank()); }

Ring ToricManifold::z_ring() const {
  const auto basis = basis_;
  const auto cp = cones_;
  const auto weights = z_weights_;
  const int scale = z_scale_;
  const std::size_t r = rank();
  return Ring("z", z_weights_, [=](const Exponent& beta) {
    long grade = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) grade += static_cast<long>(weights[i]) * beta[i];
    if (grade < 0) return false;
    for (const auto& d : enumerate_ne(cp, r, static_cast<int>(grade / scale))) {
      const IntVector l = basis.curve_pairings(d);
      bool ok = true;
      for (std::size_t i = 0; i < beta.size() && ok; ++i) ok = beta[i] - l[i] >= 0;
      if (ok) return true;
    }
    return false;
  });
}

Series ToricManifold::to_z(const Series& k_series, std::optional<std::size_t> z_shift) const {
  Series out(z_ring(), z_order(k_series.order()));
  for (const auto& [d, c] : k_series.terms()) {
    const IntVector l = basis_.curve_pairings(IntVector(d.begin(), d.end()));
    Exponent beta(l.begin(), l.end());
    if (z_shift) beta.at(*z_shift) += 1;
    out.add_term(beta, c);
  }
  return out;
}

MomentPolytope ToricManifold::moment_polytope(const RationalVector& lift) const {
  if (lift.size() != ray_count())
    throw std::invalid_argument("lift needs one entry per ray");
  RationalVector neg = lift;
  for (auto& x : neg) x = -x;
  if (!cones_.in_nef_interior(basis_.divisor_class(neg)))
    throw std::invalid_argument(
        "not a Kaehler lift: kappa(-c) must lie in the interior of the nef cone");
  MomentPolytope p;
  p.lift = lift;
  for (std::size_t i = 0; i < ray_count(); ++i) p.halfspaces.emplace_back(fan_.rays[i], -lift[i]);
  return p;
}

OpenClosedPoint ToricManifold::opcl_decompose(std::span<const std::complex<double>> z) const {
  if (z.size() != ray_count()) throw std::invalid_argument("need one z coordinate per ray");
  OpenClosedPoint p;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double mod = std::abs(z[i]);
    if (!(mod > 0.0 && mod < 1.0))
      throw std::invalid_argument("|z_" + idx(i) + "| must lie in (0, 1)");
    p.eta.push_back(-std::log(mod));
    p.h.push_back(z[i] / mod);
  }
  for (const auto& row : basis_.entries()) {
    std::complex<double> q = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      for (std::int64_t k = 0; k < row[i]; ++k) q *= z[i];
      for (std::int64_t k = 0; k > row[i]; --k) q /= z[i];
    }
    p.q.push_back(q);
  }
  return p;
}

}  // namespace toric
