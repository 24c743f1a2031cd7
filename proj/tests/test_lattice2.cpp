#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"

using namespace supnorm;

using Q = Rational;

namespace {

Q q(long a, long b) {
  Q r(a, b);
  r.canonicalize();
  return r;
}

// shortest and second-shortest independent lengths over all a z + b with norm at most reach
std::pair<double, double> minima_scan(const UpperHalfPoint<Q>& z, double reach) {
  const double x = z.x.get_d(), y = z.y.get_d();
  const i64 na = static_cast<i64>(reach / y) + 1;
  std::vector<std::pair<Q, LatticeVector>> pts;
  for (i64 a = -na; a <= na; ++a) {
    const i64 lo = static_cast<i64>(std::floor(-a * x - reach)) - 1, hi = static_cast<i64>(std::ceil(-a * x + reach)) + 1;
    for (i64 b = lo; b <= hi; ++b)
      if (a != 0 || b != 0) pts.push_back({lattice_norm_sq(z, a, b), LatticeVector{a, b}});
  }
  std::sort(pts.begin(), pts.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
  const auto& bv = pts.front().second;
  for (const auto& [v, w] : pts)
    if (w.a * bv.b - w.b * bv.a != 0) return {std::sqrt(pts.front().first.get_d()), std::sqrt(v.get_d())};
  return {std::sqrt(pts.front().first.get_d()), -1};
}

} // namespace

TEST_CASE("reduction") {
  auto sq = reduce(UpperHalfPoint<Q>(Q(0), Q(1)));
  CHECK(sq.lambda1 == 1);
  CHECK(sq.lambda2 == 1);
  CHECK(sq.basis[0] == LatticeVector{0, 1});
  CHECK(sq.basis[1] == LatticeVector{1, 0});
  auto tall = reduce(UpperHalfPoint<Q>(Q(0), Q(10)));
  CHECK(tall.lambda1 == 1);
  CHECK(tall.lambda2 == 10);
  UpperHalfPoint<Q> z(Q(3, 10), Q(1, 10));
  auto r = reduce(z);
  auto [l1, l2] = minima_scan(z, 100);
  CHECK(r.lambda1 == doctest::Approx(l1).epsilon(1e-14));
  CHECK(r.lambda2 == doctest::Approx(l2).epsilon(1e-14));
  CHECK(r.covolume == Q(1, 10));
}

TEST_CASE("Minkowski sandwich") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 500; ++k) {
    i64 den = 1 + static_cast<i64>(rng() % 997);
    UpperHalfPoint<Q> z(q(static_cast<long>(rng() % 4000) - 2000, den), q(1 + static_cast<long>(rng() % 500), 7 * den));
    auto r = reduce(z);
    double y = z.y.get_d();
    CHECK(r.lambda1 <= r.lambda2);
    CHECK(r.lambda1 * r.lambda2 >= y * (1 - 1e-12));
    CHECK(r.lambda1 * r.lambda2 <= 2 / std::sqrt(3.0) * y * (1 + 1e-12));
    CHECK(r.norm_sq[0] == lattice_norm_sq(z, r.basis[0].a, r.basis[0].b));
    if (k < 60) {
      auto [l1, l2] = minima_scan(z, r.lambda2 * (1 + 1e-9));
      CHECK(r.lambda1 == doctest::Approx(l1).epsilon(1e-12));
      CHECK(r.lambda2 == doctest::Approx(l2).epsilon(1e-12));
    }
  }
}

TEST_CASE("disc counts") {
  auto sq = reduce(UpperHalfPoint<Q>(Q(0), Q(1)));
  CHECK(count_in_disc(sq, DiscQuery<Q>::with_radius(Q(0), Q(0), Q(1))) == 5);
  CHECK(count_in_disc(sq, DiscQuery<Q>::with_radius(Q(3), Q(2), Q(0))) == 1);
  UpperHalfPoint<Q> h(Q(1, 2), Q(1, 2));
  auto rh = reduce(h);
  CHECK(count_in_disc(rh, DiscQuery<Q>::with_radius(Q(1, 4), Q(0), Q(2))) == oracle::disc_scan(h, Q(1, 4), Q(0), Q(4)));
  CHECK_THROWS_AS(DiscQuery<Q>::with_radius(Q(0), Q(0), Q(-1)), InvalidInput);

  std::mt19937_64 rng(17);
  for (int k = 0; k < 200; ++k) {
    i64 den = 1 + static_cast<i64>(rng() % 50);
    UpperHalfPoint<Q> z(q(static_cast<long>(rng() % 100), den), q(1 + static_cast<long>(rng() % 30), 3 * den));
    auto r = reduce(z);
    Q cre = q(static_cast<long>(rng() % 41) - 20, 7), cim = q(static_cast<long>(rng() % 41) - 20, 11);
    Q rad = q(static_cast<long>(rng() % 60), 9);
    auto q = DiscQuery<Q>::with_radius(cre, cim, rad);
    i64 exact = count_in_disc(r, q);
    CHECK(exact == oracle::disc_scan(z, cre, cim, q.radius_sq));
    // double-precision row count agrees away from the boundary too
    i64 visited = 0;
    DiscVisitor vis(r);
    vis.visit(cre.get_d(), cim.get_d(), rad.get_d(), [&](i64 a, i64 b) {
      Q dre = Q(a) * z.x + Q(b) - cre, dim = Q(a) * z.y - cim;
      if (dre * dre + dim * dim <= q.radius_sq) ++visited;
    });
    CHECK(visited == exact);
  }
}

TEST_CASE("bounds") {
  auto sq = reduce(UpperHalfPoint<Q>(Q(0), Q(1)));
  CHECK(schmidt_bound(sq, 1.0) == 3);
  CHECK(schmidt_bound(sq, 0.0) == 1);
  CHECK(naive_bound(sq, 1.0) == 2);
  auto tall = reduce(UpperHalfPoint<Q>(Q(0), Q(10)));
  CHECK(schmidt_bound(tall, 5.0) == doctest::Approx(8.5));
  CHECK(naive_bound(tall, 5.0) == doctest::Approx(26));
  CHECK(naive_bound(tall, 0.0) == 1);
}
