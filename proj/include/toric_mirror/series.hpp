#pragma once

// Truncated multivariate power series with exact rational coefficients.
//
// A series lives in a Ring: a fixed number of variables, a strictly positive
// linear grading and a support cone given as a membership predicate. A series
// of order N stores only monomials of grade <= N; everything of higher grade
// is discarded, so all ring operations are exact "modulo grade > N".

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "toric_mirror/rational.hpp"

namespace toric {

using Exponent = std::vector<int>;

class Ring {
 public:
  using Membership = std::function<bool(const Exponent&)>;

  /// An empty `member` admits every exponent of the right length.
  Ring(std::string tag, std::vector<int> weights, Membership member = {});

  /// Q[[x_1..x_v]] over the nonnegative orthant with total-degree grading.
  static Ring orthant(std::string tag, std::size_t variables);

  std::size_t variable_count() const { return impl_->weights.size(); }
  const std::vector<int>& weights() const { return impl_->weights; }
  const std::string& tag() const { return impl_->tag; }

  long grade(const Exponent& e) const;
  bool admits(const Exponent& e) const;

  /// Rings are interchangeable when tag and grading agree.
  bool operator==(const Ring& other) const;

 private:
  struct Impl {
    std::string tag;
    std::vector<int> weights;
    Membership member;
  };
  std::shared_ptr<const Impl> impl_;
};

class Series {
 public:
  using Terms = std::map<Exponent, Rational>;

  Series(Ring ring, int order);

  static Series constant(Ring ring, int order, const Rational& c);
  static Series monomial(Ring ring, int order, Exponent e, const Rational& c = 1);
  static Series variable(Ring ring, int order, std::size_t index);

  /// Validates every exponent against the ring; drops zeros and terms of grade > order.
  static Series from_terms(Ring ring, int order, const Terms& terms);

  const Ring& ring() const { return ring_; }
  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Exponent& e) const;
  Rational constant_term() const;

  /// Same ring, lower (or equal) order.
  Series truncated(int order) const;

  /// Throws std::logic_error if any stored term breaks the series invariants.
  void check_invariants() const;

  Series& operator+=(const Series& other);
  Series& operator-=(const Series& other);
  Series& operator*=(const Series& other);
  Series& operator*=(const Rational& c);

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(Series a, const Rational& c) { return a *= c; }
  friend Series operator*(const Rational& c, Series a) { return a *= c; }
  Series operator-() const;

  friend bool operator==(const Series& a, const Series& b);

  // Internal: insert without membership checks (callers guarantee closure).
  void add_term(const Exponent& e, const Rational& c);

 private:
  Ring ring_;
  int order_;
  Terms terms_;
};

enum class ArithKind { add, sub, mul };

Series arith(const Series& a, const Series& b, ArithKind kind);

/// exp(s) by the grading-derivation recursion; requires zero constant term.
Series exp(const Series& s);

/// exp(s) as the truncated Taylor sum; kept as an independent cross-check.
Series exp_taylor(const Series& s);

/// Requires constant term 1.
Series log(const Series& u);

/// Multiplicative inverse; requires a nonzero constant term.
Series invert(const Series& u);

/// u^k for any integer k (k < 0 requires a unit).
Series pow(const Series& u, long k);

/// Composition y_a -> images[a], where images[a] = x_a * (unit series) over `target`.
/// The source and target gradings must coincide.
Series substitute(const Series& s, const Ring& target, std::span<const Series> images);

/// Same as substitute, with the unit parts u_a given directly (y_a -> x_a * units[a]).
Series substitute_units(const Series& s, const Ring& target, std::span<const Series> units);

/// x_i d/dx_i: c x^e -> c e_i x^e.
Series log_derivative(const Series& s, std::size_t index);

/// Homogeneous pieces by grade, index 0..order.
std::vector<Series::Terms> homogeneous_layers(const Series& s);

nlohmann::json to_json(const Series& s);
Series series_from_json(const nlohmann::json& j, const Ring& ring, int order);

/// Human-readable form, e.g. "1 + q1 - 2*q1^2". Variables are prefix1..prefixv.
std::string format_series(const Series& s, const std::string& prefix);

class SeriesMatrix {
 public:
  SeriesMatrix(std::size_t rows, std::size_t cols, const Ring& ring, int order);

  static SeriesMatrix identity(std::size_t n, const Ring& ring, int order);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Ring& ring() const { return ring_; }
  int order() const { return order_; }

  Series& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Series& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  RationalMatrix constant_part() const;
  SeriesMatrix transpose() const;

  friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
  friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
  friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b);

 private:
  std::size_t rows_, cols_;
  Ring ring_;
  int order_;
  std::vector<Series> entries_;
};

/// Inverse over the series ring: exact inverse of the constant part, then a
/// Neumann correction. Throws std::domain_error if the constant part is singular.
SeriesMatrix matrix_invert(const SeriesMatrix& m);

}  // namespace toric
