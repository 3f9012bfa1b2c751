#include "toric_mirror/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "toric_mirror/linalg.hpp"

namespace toric {

namespace {

void require_compatible(const Series& a, const Series& b) {
  if (!(a.ring() == b.ring()) || a.order() != b.order()) {
    throw std::invalid_argument("series ring/order mismatch: " + a.ring().tag() + "@" +
                                std::to_string(a.order()) + " vs " + b.ring().tag() + "@" +
                                std::to_string(b.order()));
  }
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
  return e;
}

void add_into(Series::Terms& out, const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = out.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

// out += scale * a * b for homogeneous layers a, b.
void accumulate_product(Series::Terms& out, const Series::Terms& a, const Series::Terms& b,
                        const Rational& scale) {
  if (scale == 0) return;
  for (const auto& [ea, ca] : a) {
    const Rational sa = scale * ca;
    for (const auto& [eb, cb] : b) add_into(out, add_exponents(ea, eb), sa * cb);
  }
}

Series from_layers(const Ring& ring, int order, const std::vector<Series::Terms>& layers) {
  Series out(ring, order);
  for (const auto& layer : layers)
    for (const auto& [e, c] : layer) out.add_term(e, c);
  return out;
}

Exponent zero_exponent(const Ring& ring) { return Exponent(ring.variable_count(), 0); }

}  // namespace

// ---------------------------------------------------------------- Ring

Ring::Ring(std::string tag, std::vector<int> weights, Membership member) {
  if (weights.empty()) throw std::invalid_argument("ring needs at least one variable");
  for (int w : weights)
    if (w <= 0) throw std::invalid_argument("grading weights must be positive");
  impl_ = std::make_shared<const Impl>(Impl{std::move(tag), std::move(weights), std::move(member)});
}

Ring Ring::orthant(std::string tag, std::size_t variables) {
  return Ring(std::move(tag), std::vector<int>(variables, 1), [](const Exponent& e) {
    return std::all_of(e.begin(), e.end(), [](int x) { return x >= 0; });
  });
}

long Ring::grade(const Exponent& e) const {
  long g = 0;
  for (std::size_t i = 0; i < e.size(); ++i) g += static_cast<long>(impl_->weights[i]) * e[i];
  return g;
}

bool Ring::admits(const Exponent& e) const {
  if (e.size() != variable_count()) return false;
  return !impl_->member || impl_->member(e);
}

bool Ring::operator==(const Ring& other) const {
  return impl_ == other.impl_ ||
         (impl_->tag == other.impl_->tag && impl_->weights == other.impl_->weights);
}

// ---------------------------------------------------------------- Series

Series::Series(Ring ring, int order) : ring_(std::move(ring)), order_(order) {
  if (order < 0) throw std::invalid_argument("truncation order must be nonnegative");
}

Series Series::constant(Ring ring, int order, const Rational& c) {
  Series s(std::move(ring), order);
  Rational x = c;
  x.canonicalize();
  s.add_term(zero_exponent(s.ring_), x);
  return s;
}

Series Series::monomial(Ring ring, int order, Exponent e, const Rational& c) {
  Terms t;
  t.emplace(std::move(e), c);
  return from_terms(std::move(ring), order, t);
}

Series Series::variable(Ring ring, int order, std::size_t index) {
  Exponent e(ring.variable_count(), 0);
  e.at(index) = 1;
  return monomial(std::move(ring), order, std::move(e));
}

Series Series::from_terms(Ring ring, int order, const Terms& terms) {
  Series s(std::move(ring), order);
  for (const auto& [e, c] : terms) {
    if (!s.ring_.admits(e)) throw std::invalid_argument("exponent outside the support cone");
    const bool is_const = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    if (!is_const && s.ring_.grade(e) <= 0)
      throw std::invalid_argument("grading is not positive on the support cone");
    Rational x = c;
    x.canonicalize();
    s.add_term(e, x);
  }
  return s;
}

void Series::add_term(const Exponent& e, const Rational& c) {
  if (c == 0 || ring_.grade(e) > order_) return;
  add_into(terms_, e, c);
}

Rational Series::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Series::constant_term() const { return coefficient(zero_exponent(ring_)); }

Series Series::truncated(int order) const {
  if (order > order_) throw std::invalid_argument("cannot raise the truncation order");
  Series out(ring_, order);
  for (const auto& [e, c] : terms_)
    if (ring_.grade(e) <= order) out.terms_.emplace(e, c);
  return out;
}

void Series::check_invariants() const {
  for (const auto& [e, c] : terms_) {
    if (c == 0) throw std::logic_error("stored zero coefficient");
    if (c.get_den() <= 0 || gcd(c.get_num(), c.get_den()) != 1)
      throw std::logic_error("non-canonical rational");
    if (!ring_.admits(e)) throw std::logic_error("exponent outside the support cone");
    if (ring_.grade(e) > order_) throw std::logic_error("term above truncation order");
  }
}

Series& Series::operator+=(const Series& other) {
  require_compatible(*this, other);
  for (const auto& [e, c] : other.terms_) add_into(terms_, e, c);
  return *this;
}

Series& Series::operator-=(const Series& other) {
  require_compatible(*this, other);
  for (const auto& [e, c] : other.terms_) add_into(terms_, e, -c);
  return *this;
}

Series& Series::operator*=(const Series& other) { return *this = *this * other; }

Series& Series::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  require_compatible(a, b);
  Series out(a.ring_, a.order_);
  std::vector<long> gb;
  gb.reserve(b.terms_.size());
  for (const auto& [e, c] : b.terms_) gb.push_back(b.ring_.grade(e));
  for (const auto& [ea, ca] : a.terms_) {
    const long ga = a.ring_.grade(ea);
    if (ga > a.order_) continue;
    std::size_t k = 0;
    for (const auto& [eb, cb] : b.terms_) {
      if (ga + gb[k++] > a.order_) continue;
      add_into(out.terms_, add_exponents(ea, eb), ca * cb);
    }
  }
  return out;
}

Series Series::operator-() const {
  Series out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const Series& a, const Series& b) {
  return a.ring_ == b.ring_ && a.order_ == b.order_ && a.terms_ == b.terms_;
}

Series arith(const Series& a, const Series& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::add: return a + b;
    case ArithKind::sub: return a - b;
    case ArithKind::mul: return a * b;
  }
  throw std::invalid_argument("unknown arithmetic kind");
}

// ---------------------------------------------------------------- exp/log/invert

std::vector<Series::Terms> homogeneous_layers(const Series& s) {
  std::vector<Series::Terms> layers(static_cast<std::size_t>(s.order()) + 1);
  for (const auto& [e, c] : s.terms()) {
    const long g = s.ring().grade(e);
    if (g < 0) throw std::logic_error("negative grade in series");
    layers[static_cast<std::size_t>(g)].emplace(e, c);
  }
  return layers;
}

Series exp(const Series& s) {
  if (s.constant_term() != 0) throw std::domain_error("exp: constant term must be zero");
  const auto in = homogeneous_layers(s);
  const std::size_t n = in.size();
  std::vector<Series::Terms> out(n);
  out[0].emplace(zero_exponent(s.ring()), 1);
  // g E_g = sum_k k s_k E_{g-k}, from theta(E) = E theta(s) with theta the grading derivation.
  for (std::size_t g = 1; g < n; ++g) {
    for (std::size_t k = 1; k <= g; ++k)
      accumulate_product(out[g], in[k], out[g - k], Rational(static_cast<long>(k)));
    const Rational inv_g(1, static_cast<unsigned long>(g));
    for (auto& [e, c] : out[g]) c *= inv_g;
  }
  return from_layers(s.ring(), s.order(), out);
}

Series exp_taylor(const Series& s) {
  if (s.constant_term() != 0) throw std::domain_error("exp: constant term must be zero");
  Series result = Series::constant(s.ring(), s.order(), 1);
  Series term = result;
  for (long k = 1; !term.is_zero(); ++k) {
    term = term * s * Rational(1, static_cast<unsigned long>(k));
    result += term;
  }
  return result;
}

Series invert(const Series& u) {
  const Rational c0 = u.constant_term();
  if (c0 == 0) throw std::domain_error("invert: constant term is zero");
  const auto in = homogeneous_layers(u);
  const std::size_t n = in.size();
  const Rational inv_c0 = 1 / c0;
  std::vector<Series::Terms> out(n);
  out[0].emplace(zero_exponent(u.ring()), inv_c0);
  for (std::size_t g = 1; g < n; ++g)
    for (std::size_t k = 1; k <= g; ++k) accumulate_product(out[g], in[k], out[g - k], -inv_c0);
  return from_layers(u.ring(), u.order(), out);
}

Series log(const Series& u) {
  if (u.constant_term() != 1) throw std::domain_error("log: constant term must be 1");
  const auto in = homogeneous_layers(u);
  const auto inv = homogeneous_layers(invert(u));
  const std::size_t n = in.size();
  std::vector<Series::Terms> out(n);
  // g L_g = (theta(u) * u^{-1})_g
  for (std::size_t g = 1; g < n; ++g) {
    for (std::size_t k = 1; k <= g; ++k)
      accumulate_product(out[g], in[k], inv[g - k], Rational(static_cast<long>(k)));
    const Rational inv_g(1, static_cast<unsigned long>(g));
    for (auto& [e, c] : out[g]) c *= inv_g;
  }
  return from_layers(u.ring(), u.order(), out);
}

Series pow(const Series& u, long k) {
  if (k < 0) return pow(invert(u), -k);
  Series result = Series::constant(u.ring(), u.order(), 1);
  Series base = u;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

// ---------------------------------------------------------------- substitution

Series substitute_units(const Series& s, const Ring& target, std::span<const Series> units) {
  const std::size_t v = s.ring().variable_count();
  if (target.weights() != s.ring().weights())
    throw std::invalid_argument("substitute: source and target gradings differ");
  if (units.size() != v) throw std::invalid_argument("substitute: one image per variable");
  const int order = s.order();
  for (std::size_t a = 0; a < v; ++a) {
    if (!(units[a].ring() == target))
      throw std::invalid_argument("substitute: image lives in the wrong ring");
    if (units[a].constant_term() == 0)
      throw std::invalid_argument("substitute: image not of unit-monomial shape");
    if (units[a].order() < order - target.weights()[a])
      throw std::invalid_argument("substitute: image truncated below the needed order");
  }

  // powers[a][t] = units[a]^t at order (order - w_a); negative exponents use the inverse.
  std::vector<std::map<long, Series>> powers(v);
  auto power = [&](std::size_t a, long t) -> const Series& {
    auto it = powers[a].find(t);
    if (it != powers[a].end()) return it->second;
    const Series base = units[a].truncated(std::max(0, order - target.weights()[a]));
    return powers[a].emplace(t, pow(base, t)).first->second;
  };

  Series out(target, order);
  for (const auto& [d, c] : s.terms()) {
    const long g = s.ring().grade(d);
    if (g > order) continue;
    const int rest = static_cast<int>(order - g);
    Series image = Series::constant(target, rest, c);
    for (std::size_t a = 0; a < v; ++a)
      if (d[a] != 0) image *= power(a, d[a]).truncated(rest);
    for (const auto& [e, x] : image.terms()) out.add_term(add_exponents(e, d), x);
  }
  return out;
}

Series substitute(const Series& s, const Ring& target, std::span<const Series> images) {
  const std::size_t v = s.ring().variable_count();
  if (images.size() != v) throw std::invalid_argument("substitute: one image per variable");
  std::vector<Series> units;
  units.reserve(v);
  for (std::size_t a = 0; a < v; ++a) {
    const Series& h = images[a];
    if (!(h.ring() == target)) throw std::invalid_argument("substitute: image in the wrong ring");
    const int w = target.weights()[a];
    Series u(target, std::max(0, h.order() - w));
    for (const auto& [e, c] : h.terms()) {
      if (e[a] < 1) throw std::invalid_argument("substitute: image not of unit-monomial shape");
      Exponent shifted = e;
      shifted[a] -= 1;
      u.add_term(shifted, c);
    }
    units.push_back(std::move(u));
  }
  return substitute_units(s, target, units);
}

Series log_derivative(const Series& s, std::size_t index) {
  if (index >= s.ring().variable_count())
    throw std::out_of_range("log_derivative: variable index out of range");
  Series out(s.ring(), s.order());
  for (const auto& [e, c] : s.terms()) out.add_term(e, c * e[index]);
  return out;
}

// ---------------------------------------------------------------- I/O

nlohmann::json to_json(const Series& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [e, c] : s.terms()) {
    arr.push_back({{"exp", e},
                   {"num", Integer(c.get_num()).get_str()},
                   {"den", Integer(c.get_den()).get_str()}});
  }
  return arr;
}

Series series_from_json(const nlohmann::json& j, const Ring& ring, int order) {
  if (!j.is_array()) throw std::invalid_argument("series JSON must be an array");
  Series::Terms terms;
  for (const auto& rec : j) {
    Exponent e = rec.at("exp").get<Exponent>();
    if (e.size() != ring.variable_count())
      throw std::invalid_argument("series JSON exponent has the wrong length");
    Rational c = parse_rational(rec.at("num").get<std::string>() + "/" +
                                rec.at("den").get<std::string>());
    if (!terms.emplace(std::move(e), c).second)
      throw std::invalid_argument("series JSON repeats an exponent");
  }
  return Series::from_terms(ring, order, terms);
}

std::string format_series(const Series& s, const std::string& prefix) {
  if (s.is_zero()) return "0";
  std::vector<std::pair<long, const Series::Terms::value_type*>> items;
  for (const auto& t : s.terms()) items.emplace_back(s.ring().grade(t.first), &t);
  std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second->first > y.second->first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, term] : items) {
    const auto& [e, c] = *term;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += prefix + std::to_string(i + 1);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    Rational mag = abs(c);
    std::string body;
    if (mono.empty()) body = to_string(mag);
    else if (mag == 1) body = mono;
    else body = to_string(mag) + "*" + mono;
    if (first) os << (c < 0 ? "-" : "") << body;
    else os << (c < 0 ? " - " : " + ") << body;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- matrices

SeriesMatrix::SeriesMatrix(std::size_t rows, std::size_t cols, const Ring& ring, int order)
    : rows_(rows), cols_(cols), ring_(ring), order_(order),
      entries_(rows * cols, Series(ring, order)) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("empty series matrix");
}

SeriesMatrix SeriesMatrix::identity(std::size_t n, const Ring& ring, int order) {
  SeriesMatrix m(n, n, ring, order);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Series::constant(ring, order, 1);
  return m;
}

RationalMatrix SeriesMatrix::constant_part() const {
  RationalMatrix c(rows_, RationalVector(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) c[i][j] = at(i, j).constant_term();
  return c;
}

SeriesMatrix SeriesMatrix::transpose() const {
  SeriesMatrix t(cols_, rows_, ring_, order_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  SeriesMatrix out(a.rows_, b.cols_, a.ring_, a.order_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Series& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Series& y = b.at(k, j);
        if (!y.is_zero()) out.at(i, j) += x * y;
      }
    }
  return out;
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  SeriesMatrix out = a;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
  return out;
}

bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

SeriesMatrix matrix_invert(const SeriesMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("matrix_invert: matrix is not square");
  RationalMatrix c_inv;
  try {
    c_inv = linalg::inverse(m.constant_part());
  } catch (const std::domain_error&) {
    throw std::domain_error("matrix_invert: singular constant part");
  }
  SeriesMatrix c_inv_s(n, n, m.ring(), m.order());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c_inv_s.at(i, j) = Series::constant(m.ring(), m.order(), c_inv[i][j]);

  // M = C (I - T) with T = -C^{-1} (M - C); T has no constant part, so T^{N+1} = 0.
  SeriesMatrix t = c_inv_s * m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Series& e = t.at(i, j);
      e = -(e - Series::constant(m.ring(), m.order(), i == j ? 1 : 0));
    }
  const SeriesMatrix id = SeriesMatrix::identity(n, m.ring(), m.order());
  SeriesMatrix sum = id;
  for (int k = 0; k < m.order(); ++k) sum = id + t * sum;
  return sum * c_inv_s;
}

}  // namespace toric
