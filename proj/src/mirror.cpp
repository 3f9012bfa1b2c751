#include "toric_mirror/mirror.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace toric {

namespace {

// a + b*H with H ranging over H^2 in the p-basis; products drop H*H.
struct Linear {
  Rational scalar;
  RationalVector h;
};

using Laurent = std::map<long, Linear>;  // power of z -> coefficient

Linear times(const Linear& a, const Linear& b) {
  Linear out{a.scalar * b.scalar, RationalVector(a.h.size())};
  for (std::size_t k = 0; k < a.h.size(); ++k) out.h[k] = a.scalar * b.h[k] + b.scalar * a.h[k];
  return out;
}

bool is_zero(const Linear& x) {
  if (x.scalar != 0) return false;
  for (const auto& v : x.h)
    if (v != 0) return false;
  return true;
}

Laurent times(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [pa, xa] : a)
    for (const auto& [pb, xb] : b) {
      const Linear t = times(xa, xb);
      auto [it, fresh] = out.try_emplace(pa + pb, t);
      if (!fresh) {
        it->second.scalar += t.scalar;
        for (std::size_t k = 0; k < t.h.size(); ++k) it->second.h[k] += t.h[k];
      }
    }
  std::erase_if(out, [](const auto& kv) { return is_zero(kv.second); });
  return out;
}

Rational harmonic(long n) {
  Rational s = 0;
  for (long k = 1; k <= n; ++k) s += Rational(1, k);
  return s;
}

// prod_{k=l+1}^{0}(D + kz) / prod_{k=1}^{l}(D + kz), modulo D^2.
Laurent hypergeometric_factor(const RationalVector& divisor, long l) {
  const std::size_t r = divisor.size();
  Laurent out;
  if (l >= 0) {
    const Rational inv_fact = Rational(1) / factorial(l);
    out[-l] = Linear{inv_fact, RationalVector(r)};
    Linear tail{0, divisor};
    for (auto& v : tail.h) v *= -inv_fact * harmonic(l);
    if (!is_zero(tail)) out[-l - 1] = tail;
  } else {
    Rational c = factorial(-l - 1);
    if ((-l - 1) % 2 != 0) c = -c;
    Linear lead{0, divisor};
    for (auto& v : lead.h) v *= c;
    out[-l - 1] = lead;
  }
  return out;
}

std::vector<RationalVector> divisor_classes(const ToricManifold& x) {
  std::vector<RationalVector> out(x.ray_count(), RationalVector(x.rank()));
  for (std::size_t i = 0; i < x.ray_count(); ++i)
    for (std::size_t a = 0; a < x.rank(); ++a)
      out[i][a] = static_cast<long>(x.basis().entries()[a][i]);
  return out;
}

Exponent as_exponent(const IntVector& d) { return Exponent(d.begin(), d.end()); }

}  // namespace

Asymptotics ifunction_asymptotics(const ToricManifold& x, int order) {
  const Ring y = x.y_ring();
  const std::size_t r = x.rank();
  const auto classes = divisor_classes(x);
  std::vector<Series> g(r, Series(y, order));
  Series g00(y, order);
  for (const auto& d : x.effective_classes(order)) {
    if (std::all_of(d.begin(), d.end(), [](auto v) { return v == 0; })) continue;
    Laurent total{{0, Linear{1, RationalVector(r)}}};
    for (std::size_t i = 0; i < x.ray_count(); ++i)
      total = times(total, hypergeometric_factor(classes[i], x.divisor_pairing(i, d)));
    const auto it = total.find(-1);
    if (it == total.end()) continue;
    const Exponent e = as_exponent(d);
    g00.add_term(e, it->second.scalar);
    for (std::size_t a = 0; a < r; ++a) g[a].add_term(e, it->second.h[a]);
  }
  return {std::move(g), std::move(g00)};
}

Series g0_series(const ToricManifold& x, std::size_t j, int order) {
  if (j >= x.ray_count()) throw std::out_of_range("g0: ray index out of range");
  Series out(x.y_ring(), order);
  for (const auto& d : x.effective_classes(order)) {
    if (x.c1_pairing(d) != 0) continue;
    const auto lj = x.divisor_pairing(j, d);
    if (lj >= 0) continue;
    Rational denom = 1;
    bool admissible = true;
    for (std::size_t i = 0; i < x.ray_count() && admissible; ++i) {
      if (i == j) continue;
      const auto li = x.divisor_pairing(i, d);
      if (li < 0) admissible = false;
      else denom *= factorial(li);
    }
    if (!admissible) continue;
    Rational c = factorial(-lj - 1) / denom;
    if (lj % 2 != 0) c = -c;
    out.add_term(as_exponent(d), c);
  }
  return out;
}

Series MirrorMap::to_q(const Series& y_series) const {
  return substitute_units(y_series, inverse.front().ring(), inverse);
}

MirrorMap mirror_map(const ToricManifold& x, int order) {
  Asymptotics asym = ifunction_asymptotics(x, order);
  const Ring q = x.k_ring();
  std::vector<Series> u(x.rank(), Series::constant(q, order, 1));
  // Each pass fixes one more degree of u_a = exp(-g_a(q u)).
  for (int pass = 0; pass <= order; ++pass) {
    std::vector<Series> next;
    for (const auto& ga : asym.g) next.push_back(exp(-substitute_units(ga, q, u)));
    u = std::move(next);
  }
  return {std::move(asym.g), std::move(u), std::move(asym.g00)};
}

std::vector<Series> correction_terms(const ToricManifold& x, const MirrorMap& map) {
  const int order = map.inverse.front().order();
  std::vector<Series> f;
  for (std::size_t j = 0; j < x.ray_count(); ++j) f.push_back(exp(map.to_q(g0_series(x, j, order))));
  return f;
}

Potential assemble_potential(const ToricManifold& x, std::vector<Series> f) {
  if (f.size() != x.ray_count()) throw std::invalid_argument("need one correction term per ray");
  const int order = f.front().order();
  Series total(x.z_ring(), x.z_order(order));
  std::vector<Series> w;
  for (std::size_t j = 0; j < f.size(); ++j) {
    w.push_back(x.to_z(f[j], j));
    total += w.back();
  }
  return {std::move(f), std::move(w), std::move(total)};
}

Rational open_gw(const ToricManifold& x, const std::vector<Series>& f, std::size_t i,
                 const IntVector& d) {
  if (i >= x.ray_count()) throw OutOfModel("ray index out of range");
  if (d.size() != x.rank())
    throw OutOfModel("class needs " + std::to_string(x.rank()) + " coordinates");
  if (!x.cone_pair().in_mori(d)) throw OutOfModel("class is not effective");
  if (x.c1_pairing(d) != 0)
    throw OutOfModel("out of model: <c1, d> = " + std::to_string(x.c1_pairing(d)) +
                     " > 0, so n is not recorded by the correction term");
  const long degree = std::accumulate(d.begin(), d.end(), 0L);
  if (degree > f[i].order())
    throw OutOfModel("class degree " + std::to_string(degree) + " exceeds the truncation order " +
                     std::to_string(f[i].order()));
  return f[i].coefficient(as_exponent(d));
}

SeriesMatrix jacobi_matrix(const ToricManifold& x, const std::vector<Series>& f) {
  const std::size_t m = x.ray_count();
  const Ring& ring = f.front().ring();
  const int order = f.front().order();
  SeriesMatrix a(m, m, ring, order);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<Series> theta;
    for (std::size_t b = 0; b < x.rank(); ++b) theta.push_back(log_derivative(f[k], b));
    for (std::size_t i = 0; i < m; ++i) {
      Series entry = i == k ? f[k] : Series(ring, order);
      for (std::size_t b = 0; b < x.rank(); ++b) {
        const auto mbi = x.basis().entries()[b][i];
        if (mbi != 0) entry += theta[b] * Rational(static_cast<long>(mbi));
      }
      a.at(k, i) = std::move(entry);
    }
  }
  return a;
}

MirrorData MirrorData::compute(const ToricManifold& x, int order) {
  if (order < 0) throw std::invalid_argument("truncation order must be nonnegative");
  MirrorMap map = mirror_map(x, order);
  std::vector<Series> g0;
  for (std::size_t j = 0; j < x.ray_count(); ++j) g0.push_back(g0_series(x, j, order));
  std::vector<Series> f;
  for (const auto& s : g0) f.push_back(exp(map.to_q(s)));
  Asymptotics asym{map.forward, map.h0_defect};
  Potential potential = assemble_potential(x, f);
  SeriesMatrix jacobi = jacobi_matrix(x, f);
  return MirrorData{order, std::move(asym), std::move(g0), std::move(map), std::move(potential),
                    std::move(jacobi)};
}

}  // namespace toric
