#include "toric_mirror/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace toric {

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

Rational factorial(std::int64_t n) {
  if (n < 0) throw std::domain_error("factorial of a negative integer");
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

RationalVector to_rational(const IntVector& v) {
  RationalVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

IntVector primitive_integer(const RationalVector& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, Integer(x.get_den()));
  std::vector<Integer> scaled;
  Integer g = 0;
  for (const auto& x : v) {
    Integer s = x.get_num() * (den / x.get_den());
    g = gcd(g, s);
    scaled.push_back(s);
  }
  IntVector out;
  for (auto& s : scaled) {
    if (g != 0) s /= g;
    if (!s.fits_slong_p()) throw std::overflow_error("ray entry does not fit in 64 bits");
    out.push_back(s.get_si());
  }
  return out;
}

std::int64_t gcd_of(const IntVector& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

}  // namespace toric
