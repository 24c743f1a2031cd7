#pragma once

// Upper half-plane geometry, templated on the scalar: `double` for sweeps,
// `Rational` wherever a comparison has to be exact.

#include <cmath>
#include <utility>

#include "supnorm/arith.hpp"

namespace supnorm {

template <class T>
struct UpperHalfPoint {
  T x;
  T y;

  UpperHalfPoint(T x_, T y_) : x(std::move(x_)), y(std::move(y_)) {
    if constexpr (requires { x.canonicalize(); }) {
      x.canonicalize();
      y.canonicalize();
    }
    if (!(y > 0)) throw InvalidInput("not in upper half-plane: imaginary part must be positive");
  }
};

template <class T>
struct RealMatrix2 {
  T a, b, c, d;
  T det() const { return a * d - b * c; }
};

template <class T>
T norm_sq(const T& re, const T& im) {
  return re * re + im * im;
}

/// |w - z|^2 / (4 Im w Im z).
template <class T>
T hyperbolic_u(const UpperHalfPoint<T>& w, const UpperHalfPoint<T>& z) {
  T dx = w.x - z.x;
  T dy = w.y - z.y;
  return T(norm_sq(dx, dy) / (4 * w.y * z.y));
}

/// (a z + b) / (c z + d) for det > 0.
template <class T>
UpperHalfPoint<T> apply_moebius(const RealMatrix2<T>& g, const UpperHalfPoint<T>& z) {
  T det = g.det();
  if (!(det > 0)) throw InvalidInput("degenerate Moebius matrix: determinant must be positive");
  T num_re = g.a * z.x + g.b, num_im = g.a * z.y;
  T den_re = g.c * z.x + g.d, den_im = g.c * z.y;
  T den = norm_sq(den_re, den_im);
  T re = (num_re * den_re + num_im * den_im) / den;
  T im = det * z.y / den;
  return {re, im};
}

/// |a z + b|^2 for integer coefficients.
template <class T>
T lattice_norm_sq(const UpperHalfPoint<T>& z, i64 a, i64 b) {
  T re = T(a) * z.x + T(b);
  T im = T(a) * z.y;
  return norm_sq(re, im);
}

/// The two consequences of membership in the Atkin--Lehner fundamental
/// domain that the counting arguments rely on: N y >= 1 and
/// |a z + b|^2 >= 1/N for (a, b) != (0, 0).
template <class T>
struct AdmissibilityReport {
  i64 level;
  UpperHalfPoint<T> point;
  bool ny_ok;
  bool shortest_ok;
  T shortest_value;
  std::pair<i64, i64> witness;

  bool admissible() const { return ny_ok && shortest_ok; }
};

namespace detail {
inline i64 floor_to_i64(double v) { return static_cast<i64>(std::floor(v)); }
inline i64 floor_to_i64(const Rational& v) { return to_i64(floor_q(v)); }
inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }
} // namespace detail

/// Computes min |a z + b|^2 exactly (for Rational) by scanning a = 0, 1, ...
/// while a^2 y^2 can still beat the current minimum; for each a only the
/// two integers b adjacent to -a x matter. The witness is normalized to
/// a > 0, or a = 0 and b > 0, and ties keep the smallest (a, b).
template <class T>
AdmissibilityReport<T> check_admissible(const UpperHalfPoint<T>& z, i64 level) {
  if (level < 1) throw InvalidInput("level must be positive");
  T best = T(1);
  std::pair<i64, i64> witness{0, 1};
  for (i64 a = 1;; ++a) {
    T floor_v = T(a) * z.y;
    if (floor_v * floor_v > best) break;
    T target = -(T(a) * z.x);
    i64 b0 = detail::floor_to_i64(target);
    for (i64 b : {b0, b0 + 1}) {
      T v = lattice_norm_sq(z, a, b);
      if (v < best) {
        best = v;
        witness = {a, b};
      }
    }
  }
  bool ny_ok = T(level) * z.y >= T(1);
  bool shortest_ok = best * T(level) >= T(1);
  return AdmissibilityReport<T>{level, z, ny_ok, shortest_ok, best, witness};
}

} // namespace supnorm
