#pragma once

#include <algorithm>
#include <numeric>
#include <random>

#include "toric_mirror/series.hpp"

namespace toric::testing {

class SeriesGen {
 public:
  explicit SeriesGen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational small_rational() {
    int num = uniform(-9, 9);
    if (num == 0) num = 1;
    return Rational(num) / uniform(1, 5);
  }

  Exponent exponent(const Ring& ring, int order) {
    Exponent e(ring.variable_count(), 0);
    std::vector<std::size_t> slots(e.size());
    std::iota(slots.begin(), slots.end(), 0);
    std::shuffle(slots.begin(), slots.end(), rng_);
    long budget = uniform(0, order);
    for (auto a : slots) {
      const int w = ring.weights()[a];
      e[a] = uniform(0, static_cast<int>(budget / w));
      budget -= static_cast<long>(e[a]) * w;
    }
    return e;
  }

  /// Sparse series on an orthant ring with up to `terms` monomials.
  Series series(const Ring& ring, int order, int terms, bool zero_constant = false) {
    Series::Terms t;
    const int count = uniform(0, terms);
    for (int k = 0; k < count; ++k) {
      Exponent e = exponent(ring, order);
      if (ring.grade(e) > order) continue;
      t[e] += small_rational();
    }
    Series s = Series::from_terms(ring, order, t);
    if (zero_constant) s -= Series::constant(ring, order, s.constant_term());
    return s;
  }

  /// Unit series with the given constant term.
  Series unit(const Ring& ring, int order, int terms, const Rational& c0 = 1) {
    return series(ring, order, terms, true) + Series::constant(ring, order, c0);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace toric::testing
