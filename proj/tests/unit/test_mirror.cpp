#include <doctest.h>

#include "toric_mirror/fan_io.hpp"
#include "toric_mirror/mirror.hpp"

using namespace toric;

namespace {

ToricManifold manifold(const std::string& name) {
  const auto spec = *builtin_fan(name);
  return ToricManifold::create(spec.fan, spec.divisor_matrix);
}

// a + b.eps with eps^2 = 0 and b a vector over the p-basis.
struct Dual {
  Rational a;
  RationalVector b;

  Dual operator*(const Dual& o) const {
    Dual r{a * o.a, RationalVector(b.size())};
    for (std::size_t k = 0; k < b.size(); ++k) r.b[k] = a * o.b[k] + o.a * b[k];
    return r;
  }
  Dual inverse() const {
    Dual r{1 / a, RationalVector(b.size())};
    for (std::size_t k = 0; k < b.size(); ++k) r.b[k] = -b[k] / (a * a);
    return r;
  }
};

// Brute-force 1/z asymptotics: evaluate the hypergeometric products at z = 1 on
// dual numbers D_i -> eps * D_i, then read off the degree -1 pieces by homogeneity.
std::pair<std::vector<Series>, Series> asymptotics_oracle(const ToricManifold& x, int order) {
  const std::size_t r = x.rank();
  std::vector<Series> g(r, Series(x.y_ring(), order));
  Series g00(x.y_ring(), order);
  for (const auto& d : x.effective_classes(order)) {
    const auto c1 = x.c1_pairing(d);
    if (c1 != 0 && c1 != 1) continue;
    if (std::all_of(d.begin(), d.end(), [](auto v) { return v == 0; })) continue;
    Dual total{1, RationalVector(r)};
    for (std::size_t i = 0; i < x.ray_count(); ++i) {
      RationalVector di(r);
      for (std::size_t a = 0; a < r; ++a) di[a] = static_cast<long>(x.basis().entries()[a][i]);
      const auto l = x.divisor_pairing(i, d);
      if (l >= 0) {
        for (long k = 1; k <= l; ++k) total = total * Dual{k, di}.inverse();
      } else {
        for (long k = l + 1; k <= 0; ++k) total = total * Dual{k, di};
      }
    }
    const Exponent e(d.begin(), d.end());
    if (c1 == 0)
      for (std::size_t a = 0; a < r; ++a) g[a].add_term(e, total.b[a]);
    else
      g00.add_term(e, total.a);
  }
  return {g, g00};
}

Rational central_ratio(long k) {
  // (2k-1)! / (k!)^2 = binom(2k, k) / (2k)
  Rational b = 1;
  for (long t = 1; t <= k; ++t) b = b * Rational(k + t) / t;
  return b / Rational(2 * k);
}

Series q_poly(const Ring& ring, int order, std::initializer_list<std::pair<Exponent, Rational>> terms) {
  Series::Terms t;
  for (const auto& [e, c] : terms) t[e] += c;
  return Series::from_terms(ring, order, t);
}

}  // namespace

TEST_CASE("I-function asymptotics agree with the dual-number oracle") {
  for (const auto& name : builtin_names()) {
    const auto x = manifold(name);
    const int order = x.dim() >= 3 ? 5 : 7;
    const auto asym = ifunction_asymptotics(x, order);
    const auto [g, g00] = asymptotics_oracle(x, order);
    for (std::size_t a = 0; a < x.rank(); ++a) CHECK(asym.g[a] == g[a]);
    CHECK(asym.g00 == g00);
  }
}

TEST_CASE("g0 for F2") {
  const auto f2 = manifold("f2");
  const Ring y = f2.y_ring();
  CHECK(g0_series(f2, 1, 2) == q_poly(y, 2, {{{1, 0}, 1}, {{2, 0}, Rational(3, 2)}}));
  const int order = 9;
  Series expected(y, order);
  for (long k = 1; k <= order; ++k) expected.add_term({static_cast<int>(k), 0}, central_ratio(k));
  CHECK(g0_series(f2, 1, order) == expected);
  for (std::size_t j : {0u, 2u, 3u}) CHECK(g0_series(f2, j, order).is_zero());
}

TEST_CASE("the H^2 asymptotics are minus the g0 combination") {
  for (const auto& name : builtin_names()) {
    const auto x = manifold(name);
    const int order = 6;
    const auto asym = ifunction_asymptotics(x, order);
    for (std::size_t a = 0; a < x.rank(); ++a) {
      Series combo(x.y_ring(), order);
      for (std::size_t j = 0; j < x.ray_count(); ++j)
        combo -= g0_series(x, j, order) * Rational(static_cast<long>(x.basis().entries()[a][j]));
      CHECK(asym.g[a] == combo);
    }
  }
}

TEST_CASE("Fano built-ins have trivial mirror data") {
  for (const char* name : {"p1", "p2", "f0", "f1", "p1xp2"}) {
    const auto x = manifold(name);
    CHECK(x.is_fano());
    const auto data = MirrorData::compute(x, 8);
    for (const auto& g : data.map.forward) CHECK(g.is_zero());
    CHECK(data.map.h0_defect.is_zero());
    for (const auto& u : data.map.inverse) CHECK(u == Series::constant(u.ring(), 8, 1));
    for (const auto& f : data.potential.f) CHECK(f == Series::constant(f.ring(), 8, 1));
    for (std::size_t j = 0; j < x.ray_count(); ++j) CHECK(g0_series(x, j, 8).is_zero());
  }
}

TEST_CASE("F2 mirror map and correction terms") {
  const auto f2 = manifold("f2");
  const int order = 8;
  const auto data = MirrorData::compute(f2, order);
  const Ring q = f2.k_ring();
  const Series one_plus = q_poly(q, order, {{{0, 0}, 1}, {{1, 0}, 1}});
  CHECK(data.map.inverse[0] == pow(one_plus, -2));
  CHECK(data.map.inverse[1] == one_plus);
  // q1 = y1 + 2 y1^2 + 5 y1^3 + ...: the forward map is q1 = y1 exp(g1).
  const Series q1_of_y = exp(data.map.forward[0]);
  CHECK(q1_of_y.coefficient({1, 0}) == 2);
  CHECK(q1_of_y.coefficient({2, 0}) == 5);
  CHECK(q1_of_y.coefficient({3, 0}) == 14);
  const Series one = Series::constant(q, order, 1);
  CHECK(data.potential.f == std::vector<Series>{one, one_plus, one, one});
}

TEST_CASE("truncation is stable") {
  for (const char* name : {"f2", "p1xf2"}) {
    const auto x = manifold(name);
    const auto lo = MirrorData::compute(x, 4);
    const auto hi = MirrorData::compute(x, 6);
    for (std::size_t a = 0; a < x.rank(); ++a) {
      CHECK(hi.map.forward[a].truncated(4) == lo.map.forward[a]);
      CHECK(hi.map.inverse[a].truncated(4) == lo.map.inverse[a]);
    }
    for (std::size_t j = 0; j < x.ray_count(); ++j) CHECK(hi.potential.f[j].truncated(4) == lo.potential.f[j]);
  }
}

TEST_CASE("P1 x F2 correction terms match F2 on F2 rays and are 1 on P1 rays") {
  const auto prod = MirrorData::compute(manifold("p1xf2"), 6);
  const auto f2 = MirrorData::compute(manifold("f2"), 6);
  const auto prod_x = manifold("p1xf2");
  for (std::size_t j = 0; j < 4; ++j) {
    for (const auto& [e, c] : f2.potential.f[j].terms()) CHECK(prod.potential.f[j].coefficient({e[0], e[1], 0}) == c);
    CHECK(prod.potential.f[j].terms().size() == f2.potential.f[j].terms().size());
  }
  for (std::size_t j = 4; j < 6; ++j)
    CHECK(prod.potential.f[j] == Series::constant(prod_x.k_ring(), 6, 1));
}

TEST_CASE("potential") {
  const auto f2 = manifold("f2");
  const auto data = MirrorData::compute(f2, 6);
  const Ring z = f2.z_ring();
  const int zo = f2.z_order(6);
  Series expected(z, zo);
  for (int j = 0; j < 4; ++j) {
    Exponent e(4, 0);
    e[j] = 1;
    expected.add_term(e, 1);
  }
  expected.add_term({0, -1, 1, 1}, 1);
  CHECK(data.potential.total == expected);
  data.potential.total.check_invariants();

  const auto p2 = manifold("p2");
  const auto pd = MirrorData::compute(p2, 6);
  CHECK(pd.potential.total.terms().size() == 3);
  for (const auto& name : builtin_names()) {
    const auto x = manifold(name);
    const auto d = MirrorData::compute(x, 4);
    for (std::size_t j = 0; j < x.ray_count(); ++j) {
      Exponent e(x.ray_count(), 0);
      e[j] = 1;
      CHECK(d.potential.w[j].coefficient(e) == 1);
    }
  }
}

TEST_CASE("open Gromov-Witten invariants") {
  const auto f2 = manifold("f2");
  const auto data = MirrorData::compute(f2, 6);
  CHECK(open_gw(f2, data.potential.f, 1, {0, 0}) == 1);
  CHECK(open_gw(f2, data.potential.f, 1, {1, 0}) == 1);
  CHECK(open_gw(f2, data.potential.f, 1, {2, 0}) == 0);
  CHECK(open_gw(f2, data.potential.f, 0, {0, 0}) == 1);
  CHECK_THROWS_AS(open_gw(f2, data.potential.f, 1, {0, 1}), OutOfModel);
  CHECK_THROWS_AS(open_gw(f2, data.potential.f, 1, {7, 0}), OutOfModel);
  CHECK_THROWS_AS(open_gw(f2, data.potential.f, 1, {1}), OutOfModel);
}

TEST_CASE("Jacobi matrix") {
  const auto f2 = manifold("f2");
  const int order = 6;
  const auto data = MirrorData::compute(f2, order);
  const Ring q = f2.k_ring();
  const Series q1 = Series::variable(q, order, 0);
  const Series one = Series::constant(q, order, 1);
  const Series zero(q, order);
  CHECK(data.jacobi.at(1, 0) == zero);
  CHECK(data.jacobi.at(1, 1) == one - q1);
  CHECK(data.jacobi.at(1, 2) == q1);
  CHECK(data.jacobi.at(1, 3) == q1);
  for (std::size_t k : {0u, 2u, 3u})
    for (std::size_t i = 0; i < 4; ++i) CHECK(data.jacobi.at(k, i) == (i == k ? one : zero));

  // Second route: z_i dw_k/dz_i computed on the z-ring.
  for (const auto& name : builtin_names()) {
    const auto x = manifold(name);
    const auto d = MirrorData::compute(x, 4);
    for (std::size_t k = 0; k < x.ray_count(); ++k)
      for (std::size_t i = 0; i < x.ray_count(); ++i)
        CHECK(log_derivative(d.potential.w[k], i) == x.to_z(d.jacobi.at(k, i), k));
  }
}
