#pragma once

// The rank-2 lattice <1, z> inside the plane: Lagrange--Gauss reduction,
// successive minima, lattice points in a disc and the uniform bound
//   #(M cap D) << 1 + R/lambda1 + R^2/(lambda1 lambda2).

#include <algorithm>
#include <array>
#include <type_traits>
#include <cmath>

#include "supnorm/halfplane.hpp"

namespace supnorm {

/// Integer coordinates of the lattice vector a z + b.
struct LatticeVector {
  i64 a = 0;
  i64 b = 0;
  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
};

template <class T>
struct ReducedLattice {
  UpperHalfPoint<T> generator;
  std::array<LatticeVector, 2> basis;
  std::array<T, 2> norm_sq; // squared lengths of the basis vectors, exact for Rational
  double lambda1;
  double lambda2;
  T covolume;
};

template <class T>
struct DiscQuery {
  T center_re;
  T center_im;
  T radius_sq; // closed disc |v - center|^2 <= radius_sq

  static DiscQuery with_radius(T re, T im, const T& radius) {
    if (radius < 0) throw InvalidInput("disc radius must be non-negative");
    return {std::move(re), std::move(im), radius * radius};
  }
};

namespace detail {

inline i64 round_to_i64(double v) { return static_cast<i64>(std::llround(v)); }
inline i64 round_to_i64(const Rational& v) { return to_i64(round_q(v)); }

template <class T>
T inner(const UpperHalfPoint<T>& z, const LatticeVector& u, const LatticeVector& v) {
  T zz = z.x * z.x + z.y * z.y;
  return T(u.a * v.a) * zz + T(u.a * v.b + v.a * u.b) * z.x + T(u.b * v.b);
}

inline bool lex_less(const LatticeVector& u, const LatticeVector& v) {
  return u.a != v.a ? u.a < v.a : u.b < v.b;
}

inline LatticeVector normalize_sign(LatticeVector v) {
  if (v.a < 0 || (v.a == 0 && v.b < 0)) return {-v.a, -v.b};
  return v;
}

/// Largest integer k with k <= q + sqrt(r), r >= 0.
template <class T>
i64 floor_plus_sqrt(const T& q, const T& r) {
  double guess = std::floor(to_double(q) + std::sqrt(std::max(0.0, to_double(r))));
  i64 k = static_cast<i64>(guess);
  if constexpr (std::is_same_v<T, double>) {
    return k;
  } else {
    auto ok = [&](i64 cand) {
      T diff = T(cand) - q;
      return diff <= 0 || diff * diff <= r;
    };
    while (!ok(k)) --k;
    while (ok(k + 1)) ++k;
    return k;
  }
}

/// Smallest integer k with k >= q - sqrt(r), r >= 0.
template <class T>
i64 ceil_minus_sqrt(const T& q, const T& r) {
  return -floor_plus_sqrt<T>(T(-q), r);
}

} // namespace detail

/// Lagrange--Gauss reduction of <1, z>. The first basis vector realizes
/// lambda1 and the second lambda2; signs are normalized to a > 0 (or a = 0,
/// b > 0) and equal-length vectors are ordered lexicographically.
template <class T>
ReducedLattice<T> reduce(const UpperHalfPoint<T>& z) {
  LatticeVector u{0, 1}, v{1, 0};
  T nu = detail::inner(z, u, u), nv = detail::inner(z, v, v);
  if (nv < nu) {
    std::swap(u, v);
    std::swap(nu, nv);
  }
  for (;;) {
    i64 mu = detail::round_to_i64(T(detail::inner(z, u, v) / nu));
    v = {v.a - mu * u.a, v.b - mu * u.b};
    nv = detail::inner(z, v, v);
    if (!(nv < nu)) break;
    std::swap(u, v);
    std::swap(nu, nv);
  }
  u = detail::normalize_sign(u);
  v = detail::normalize_sign(v);
  if (nu == nv && detail::lex_less(v, u)) std::swap(u, v);
  return ReducedLattice<T>{z,
                           {u, v},
                           {nu, nv},
                           std::sqrt(detail::to_double(nu)),
                           std::sqrt(detail::to_double(nv)),
                           z.y};
}

/// Exact number of lattice points a z + b in the closed disc, found row by
/// row: a runs over the integers with (a y - Im c)^2 <= R^2 and, for each
/// such a, the admissible b form one integer interval.
template <class T>
i64 count_in_disc(const ReducedLattice<T>& lattice, const DiscQuery<T>& q) {
  const auto& z = lattice.generator;
  if (q.radius_sq < 0) return 0;
  T y_sq = z.y * z.y;
  T a_center = q.center_im / z.y;
  T a_rad = q.radius_sq / y_sq;
  i64 a_lo = detail::ceil_minus_sqrt<T>(a_center, a_rad);
  i64 a_hi = detail::floor_plus_sqrt<T>(a_center, a_rad);
  i64 total = 0;
  for (i64 a = a_lo; a <= a_hi; ++a) {
    T dy = T(a) * z.y - q.center_im;
    T rem = q.radius_sq - dy * dy;
    if (rem < 0) continue;
    T b_center = q.center_re - T(a) * z.x;
    i64 lo = detail::ceil_minus_sqrt<T>(b_center, rem);
    i64 hi = detail::floor_plus_sqrt<T>(b_center, rem);
    if (hi >= lo) total += hi - lo + 1;
  }
  return total;
}

/// 1 + R/lambda1 + R^2/(lambda1 lambda2).
template <class T>
double schmidt_bound(const ReducedLattice<T>& lattice, double radius) {
  return 1.0 + radius / lattice.lambda1 + radius * radius / (lattice.lambda1 * lattice.lambda2);
}

/// 1 + R^2/lambda1^2.
template <class T>
double naive_bound(const ReducedLattice<T>& lattice, double radius) {
  return 1.0 + radius * radius / (lattice.lambda1 * lattice.lambda1);
}

/// Visits every lattice point of <1, z> in a disc using the reduced basis,
/// so the work is proportional to 1 + R/lambda1 + R^2/covolume rather than
/// to R/y. Floating point with a small outward slack: the callback receives
/// a superset of the disc's points and the caller decides membership
/// exactly.
class DiscVisitor {
public:
  explicit DiscVisitor(const ReducedLattice<double>& lattice);
  template <class T>
  explicit DiscVisitor(const ReducedLattice<T>& lattice) : DiscVisitor(to_double_lattice(lattice)) {}

  template <class F>
  void visit(double center_re, double center_im, double radius, F&& f) const {
    double alpha = (center_re * v2_im_ - center_im * v2_re_) / det_;
    double beta = (v1_re_ * center_im - v1_im_ * center_re) / det_;
    double slack = 1e-9 * (1.0 + std::abs(center_re) + std::abs(center_im) + radius);
    double r = radius + slack;
    double tau2 = 1e-9 * (1.0 + std::abs(beta));
    i64 m2_lo = static_cast<i64>(std::ceil(beta - r / h_ - tau2));
    i64 m2_hi = static_cast<i64>(std::floor(beta + r / h_ + tau2));
    for (i64 m2 = m2_lo; m2 <= m2_hi; ++m2) {
      double off = (static_cast<double>(m2) - beta) * h_;
      double w2 = r * r - off * off;
      double w = w2 > 0 ? std::sqrt(w2) : 0.0;
      double mid = alpha - mu_ * (static_cast<double>(m2) - beta);
      double tau1 = 1e-9 * (1.0 + std::abs(mid));
      i64 m1_lo = static_cast<i64>(std::ceil(mid - w / lambda1_ - tau1));
      i64 m1_hi = static_cast<i64>(std::floor(mid + w / lambda1_ + tau1));
      for (i64 m1 = m1_lo; m1 <= m1_hi; ++m1)
        f(m1 * u_.a + m2 * v_.a, m1 * u_.b + m2 * v_.b);
    }
  }

private:
  template <class T>
  static ReducedLattice<double> to_double_lattice(const ReducedLattice<T>& l) {
    UpperHalfPoint<double> z(detail::to_double(l.generator.x), detail::to_double(l.generator.y));
    return ReducedLattice<double>{z,
                                  l.basis,
                                  {detail::to_double(l.norm_sq[0]), detail::to_double(l.norm_sq[1])},
                                  l.lambda1,
                                  l.lambda2,
                                  z.y};
  }

  LatticeVector u_, v_;
  double v1_re_, v1_im_, v2_re_, v2_im_;
  double det_, lambda1_, mu_, h_;
};

} // namespace supnorm
