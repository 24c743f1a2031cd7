#pragma once

// Slow reference implementations used only by the tests. They share no code
// with the enumerators beyond the exact Moebius/u evaluation in rationals.

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <vector>

#include "supnorm/matcount.hpp"
#include "supnorm/pell.hpp"

namespace oracle {

using namespace supnorm;

using Quad = std::tuple<i64, i64, i64, i64>; // (a, b, c, d)

struct Classified {
  std::set<Quad> generic, upper, parabolic;
};

inline bool near(const UpperHalfPoint<Rational>& z, const Quad& g, const Rational& delta) {
  auto [a, b, c, d] = g;
  // floating rejection far from the boundary, exact decision otherwise
  {
    const double x = z.x.get_d(), y = z.y.get_d();
    const double nre = a * x + b, nim = a * y, dre = c * x + d, dim = c * y;
    const double den = dre * dre + dim * dim;
    const double wre = (nre * dre + nim * dim) / den, wim = (nim * dre - nre * dim) / den;
    const double uf = ((wre - x) * (wre - x) + (wim - y) * (wim - y)) / (4 * wim * y);
    const double dl = delta.get_d();
    if (uf > dl * (1 + 1e-6) + 1e-6) return false;
    if (uf < dl * (1 - 1e-6) - 1e-6) return true;
  }
  RealMatrix2<Rational> m{Rational(a), Rational(b), Rational(c), Rational(d)};
  return hyperbolic_u(apply_moebius(m, z), z) <= delta;
}

/// Loops over c, a - d and a + d with generous float ranges; b is forced by
/// the determinant. Every candidate is tested exactly.
inline Classified quad_loop(const UpperHalfPoint<Rational>& z, i64 l, i64 N, const Rational& delta) {
  Classified out;
  const double x = z.x.get_d(), y = z.y.get_d(), dl = delta.get_d();
  const double sl = std::sqrt(static_cast<double>(l));
  // u <= delta pins Im(gamma z)/y, hence |cz + d|, hence |c| y; twice that for slack
  const i64 cmax = static_cast<i64>(sl * (2 * std::sqrt(dl) + 2 * std::sqrt(1 + dl)) / y) + 2;
  const i64 smax = static_cast<i64>(2 * std::sqrt(static_cast<double>(l) * (1 + dl))) + 2;
  const double r = 2 * y * std::sqrt(dl * static_cast<double>(l));
  for (i64 c = -cmax; c <= cmax; ++c) {
    // Im(-c z^2 + e z + b) = y (e - 2 c x)
    const i64 elo = static_cast<i64>(std::floor(2 * c * x - r / y)) - 2;
    const i64 ehi = static_cast<i64>(std::ceil(2 * c * x + r / y)) + 2;
    for (i64 e = elo; e <= ehi; ++e) {
      for (i64 s = -smax; s <= smax; ++s) {
        if (((s + e) & 1) != 0) continue;
        const i64 a = (s + e) / 2, d = (s - e) / 2;
        std::vector<i64> bs;
        if (c != 0) {
          const i64 num = a * d - l;
          if (num % c != 0) continue;
          bs.push_back(num / c);
        } else {
          if (a * d != l) continue;
          const double mid = -e * x;
          const i64 lo = static_cast<i64>(std::floor(mid - r)) - 2, hi = static_cast<i64>(std::ceil(mid + r)) + 2;
          for (i64 b = lo; b <= hi; ++b) bs.push_back(b);
        }
        for (i64 b : bs) {
          Quad g{a, b, c, d};
          if (!near(z, g, delta)) continue;
          if (s * s == 4 * l) {
            out.parabolic.insert(g);
          } else if (c == 0) {
            out.upper.insert(g);
          } else if (c % N == 0) {
            out.generic.insert(g);
          }
        }
      }
    }
  }
  return out;
}

inline Classified classify(const CountBreakdown& b) {
  Classified out;
  for (const auto& m : b.matrices) {
    Quad q{m.matrix.a.get_si(), m.matrix.b.get_si(), m.matrix.c.get_si(), m.matrix.d.get_si()};
    auto& dst = m.cls == MatrixClass::generic ? out.generic : m.cls == MatrixClass::upper_triangular ? out.upper : out.parabolic;
    dst.insert(q);
  }
  return out;
}

/// Smallest |a z + b|^2 over 1 <= a <= amax and all b, plus a = 0, b = 1.
inline Rational shortest_scan(const UpperHalfPoint<Rational>& z, i64 amax) {
  Rational best = 1;
  for (i64 a = 1; a <= amax; ++a) {
    const double cx = -a * z.x.get_d();
    for (i64 b = static_cast<i64>(std::floor(cx)) - 3; b <= static_cast<i64>(std::ceil(cx)) + 3; ++b) {
      Rational v = lattice_norm_sq(z, a, b);
      if (v < best) best = v;
    }
  }
  return best;
}

/// Lattice points a z + b in the disc by scanning a box.
inline i64 disc_scan(const UpperHalfPoint<Rational>& z, const Rational& cre, const Rational& cim, const Rational& r2) {
  const double r = std::sqrt(r2.get_d()), y = z.y.get_d(), x = z.x.get_d();
  const i64 alo = static_cast<i64>(std::floor((cim.get_d() - r) / y)) - 1;
  const i64 ahi = static_cast<i64>(std::ceil((cim.get_d() + r) / y)) + 1;
  i64 n = 0;
  for (i64 a = alo; a <= ahi; ++a) {
    const double mid = cre.get_d() - a * x;
    for (i64 b = static_cast<i64>(std::floor(mid - r)) - 1; b <= static_cast<i64>(std::ceil(mid + r)) + 1; ++b) {
      Rational dre = Rational(a) * z.x + Rational(b) - cre, dim = Rational(a) * z.y - cim;
      if (dre * dre + dim * dim <= r2) ++n;
    }
  }
  return n;
}

/// Minimal x, y >= 1 with x^2 - D y^2 = 1 by increasing y.
inline std::pair<i64, i64> brute_unit(i64 D) {
  for (i64 y = 1;; ++y) {
    i128 v = static_cast<i128>(D) * y * y + 1;
    i64 x = isqrt128(v);
    if (static_cast<i128>(x) * x == v) return {x, y};
  }
}

/// All (X, Y), Y >= 1, |X| <= xmax with X^2 - D Y^2 = m, scanning X.
inline std::vector<std::pair<i64, i64>> pell_scan(i64 D, i64 m, i64 xmax) {
  std::vector<std::pair<i64, i64>> out;
  for (i64 X = -xmax; X <= xmax; ++X) {
    i128 t = static_cast<i128>(X) * X - m;
    if (t <= 0 || t % D != 0) continue;
    i128 q = t / D;
    i64 Y = isqrt128(q);
    if (static_cast<i128>(Y) * Y == q) out.emplace_back(Y, X);
  }
  std::sort(out.begin(), out.end());
  for (auto& p : out) std::swap(p.first, p.second);
  return out;
}

/// Fundamental solution of x^2 - D y^2 = 1 by the chakravala method.
inline std::pair<supnorm::BigInt, supnorm::BigInt> chakravala(long D) {
  using supnorm::BigInt;
  BigInt d = D;
  BigInt sq;
  mpz_sqrt(sq.get_mpz_t(), d.get_mpz_t());
  // start with a = ceil or floor of sqrt(D), whichever gives the smaller |k|
  BigInt a = sq, b = 1;
  BigInt k = a * a - d;
  BigInt a2 = sq + 1, k2 = a2 * a2 - d;
  if (abs(k2) < abs(k)) {
    a = a2;
    k = k2;
  }
  while (k != 1) {
    BigInt ak = abs(k);
    // m with |k| | a + b m and |m^2 - D| minimal
    BigInt best_m, best_v;
    bool have = false;
    BigInt lo = sq - ak - 1, hi = sq + ak + 1;
    if (lo < 1) lo = 1;
    for (BigInt m = lo; m <= hi; ++m) {
      if ((a + b * m) % ak != 0) continue;
      BigInt v = abs(m * m - d);
      if (!have || v < best_v) {
        have = true;
        best_v = v;
        best_m = m;
      }
    }
    BigInt m = best_m;
    BigInt na = (a * m + d * b) / ak;
    BigInt nb = (a + b * m) / ak;
    BigInt nk = (m * m - d) / k;
    a = abs(na);
    b = abs(nb);
    k = nk;
  }
  return {a, b};
}

} // namespace oracle
