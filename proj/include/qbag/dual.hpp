#pragma once

#include <algorithm>
#include <cmath>

namespace qbag {

// Forward-mode tangent. `d` carries a one-sided directional derivative, so the
// non-smooth primitives below (max0, tmax) propagate the derivative of the
// branch that is active in the seeded direction.
struct Dual {
  double v = 0.0;
  double d = 0.0;

  Dual() = default;
  Dual(double value) : v(value) {}
  Dual(double value, double deriv) : v(value), d(deriv) {}
};

inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
inline double texp(double x) { return std::exp(x); }
inline Dual texp(Dual a) {
  double e = std::exp(a.v);
  return {e, e * a.d};
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

inline double max0(double x) { return x > 0.0 ? x : 0.0; }
inline Dual max0(Dual x) {
  if (x.v > 0.0) return x;
  if (x.v < 0.0) return {0.0, 0.0};
  return {0.0, std::max(0.0, x.d)};
}

inline double tmax(double a, double b) { return a >= b ? a : b; }
inline Dual tmax(Dual a, Dual b) {
  if (a.v > b.v) return a;
  if (b.v > a.v) return b;
  return {a.v, std::max(a.d, b.d)};
}

}  // namespace qbag
