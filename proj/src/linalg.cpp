#include "toric_mirror/linalg.hpp"

#include <stdexcept>

namespace toric::linalg {

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) out.push_back(toric::to_rational(row));
  return out;
}

RationalMatrix rref(RationalMatrix a, std::vector<std::size_t>* pivots) {
  if (pivots) pivots->clear();
  const std::size_t rows = a.size();
  if (rows == 0) return a;
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return a;
}

std::size_t rank(const RationalMatrix& a) {
  std::vector<std::size_t> piv;
  rref(a, &piv);
  return piv.size();
}

Rational determinant(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
    }
  }
  return det;
}

std::int64_t determinant(const IntMatrix& a) {
  const Rational d = determinant(to_rational(a));
  return mpz_class(d.get_num()).get_si();
}

RationalMatrix inverse(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix aug(n, RationalVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("inverse of a non-square matrix");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  std::vector<std::size_t> piv;
  aug = rref(std::move(aug), &piv);
  if (piv.size() < n || piv.back() >= n) throw std::domain_error("singular matrix");
  RationalMatrix out(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a.front().size() : 0;
  RationalMatrix aug(rows, RationalVector(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  std::vector<std::size_t> piv;
  aug = rref(std::move(aug), &piv);
  RationalVector x(cols);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == cols) return std::nullopt;
    x[piv[r]] = aug[r][cols];
  }
  return x;
}

RationalMatrix nullspace(const RationalMatrix& a, std::size_t columns) {
  std::vector<std::size_t> piv;
  const RationalMatrix r = a.empty() ? a : rref(a, &piv);
  std::vector<bool> is_pivot(columns, false);
  for (auto p : piv) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t f = 0; f < columns; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(columns);
    v[f] = 1;
    for (std::size_t row = 0; row < piv.size(); ++row) v[piv[row]] = -r[row][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = k ? b.front().size() : 0;
  RationalMatrix out(n, RationalVector(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

RationalMatrix transpose(const RationalMatrix& a) {
  if (a.empty()) return a;
  RationalMatrix out(a.front().size(), RationalVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  return out;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace toric::linalg
