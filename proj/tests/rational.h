#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

// Exact fractions for metric oracles. Values stay tiny (fixtures of a few
// dozen candidates), so 64-bit numerators are plenty; overflow is checked.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(v);
  }
  friend Rational operator+(Rational a, Rational b) {
    return {checked(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den),
            checked(static_cast<__int128>(a.den) * b.den)};
  }
  friend Rational operator*(Rational a, Rational b) {
    return {checked(static_cast<__int128>(a.num) * b.num),
            checked(static_cast<__int128>(a.den) * b.den)};
  }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num == 0) throw std::domain_error("division by zero");
    return {checked(static_cast<__int128>(a.num) * b.den),
            checked(static_cast<__int128>(a.den) * b.num)};
  }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// True when `x` is the double nearest to `r`, or within `ulps` units in the
// last place of it (floating evaluation of a sum of fractions may round more
// than once).
inline bool matches(double x, Rational r, int ulps = 4) {
  const double exact = r.to_double();
  if (x == exact) return true;
  double lo = exact, hi = exact;
  for (int i = 0; i < ulps; ++i) {
    lo = std::nextafter(lo, -INFINITY);
    hi = std::nextafter(hi, INFINITY);
  }
  return x >= lo && x <= hi;
}
