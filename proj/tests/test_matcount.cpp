#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "supnorm/harness.hpp"

using namespace supnorm;

namespace {

UpperHalfPoint<Rational> pt(const char* x, const char* y) { return {parse_rational(x), parse_rational(y)}; }

// admissible point of height y for level N
UpperHalfPoint<Rational> adm(i64 N, const char* y, std::uint64_t seed = 3) { return sweep_point(N, parse_rational(y), seed); }

void check_against_oracle(const UpperHalfPoint<Rational>& z, i64 N, const Rational& delta, i64 lmax) {
  CountEngine eng(z, N, delta);
  for (i64 l = 1; l <= lmax; ++l) {
    auto got = oracle::classify(eng.enumerate(l, true));
    auto want = oracle::quad_loop(z, l, N, delta);
    INFO("z = ", format_rational(z.x), " + i ", format_rational(z.y), ", N = ", N, ", l = ", l, ", delta = ", format_rational(delta));
    CHECK(got.generic == want.generic);
    CHECK(got.upper == want.upper);
    CHECK(got.parabolic == want.parabolic);
  }
}

} // namespace

TEST_CASE("z = i, N = 1, l = 1, delta = 0") {
  auto b = enumerate(CountQuery{pt("0", "1"), 1, 1, Rational(0)}, true);
  CHECK(b.parabolic == 2);
  CHECK(b.upper_triangular == 0);
  // the rotations fixing i are +-(0,-1;1,0): two matrices
  CHECK(b.generic == 2);
  CHECK(b.total() == 4);
  auto want = oracle::quad_loop(pt("0", "1"), 1, 1, Rational(0));
  auto got = oracle::classify(b);
  CHECK(got.generic == want.generic);
  CHECK(got.parabolic == want.parabolic);
}

TEST_CASE("enumerate matches the quadruple loop") {
  check_against_oracle(pt("0", "1"), 1, Rational(1), 20);
  check_against_oracle(pt("1/3", "1"), 1, Rational(4), 20);
  check_against_oracle(pt("1/2", "1/2"), 2, Rational(4), 20);
  check_against_oracle(pt("2/5", "1/3"), 5, Rational(1), 20);
  check_against_oracle(pt("3/11", "1/4"), 11, Rational(4), 15);
  check_against_oracle(pt("-1/2", "3/5"), 6, Rational(1, 3), 15);
  check_against_oracle(pt("37/101", "3/101"), 101, Rational(4), 10);
}

TEST_CASE("upper-triangular count vanishes at l = 1") {
  for (std::uint64_t seed : {1, 2, 3}) {
    CountEngine eng(adm(3, "1/2", seed), 3, Rational(4));
    CHECK(eng.upper(1) == 0);
  }
}

TEST_CASE("invariants of enumerated matrices") {
  auto z = pt("5/13", "2/7");
  CountEngine eng(z, 7, Rational(4));
  for (i64 l = 1; l <= 30; ++l) {
    auto b = eng.enumerate(l, true);
    CHECK(b.generic % 2 == 0);
    CHECK(b.upper_triangular % 2 == 0);
    CHECK(b.parabolic % 2 == 0);
    for (const auto& m : b.matrices) {
      const auto& g = m.matrix;
      CHECK(g.det() == l);
      BigInt e = g.a - g.d, s = g.trace();
      CHECK(e * e + 4 * g.b * g.c == s * s - 4 * l);
      CHECK(BigInt(abs(g.c)).get_d() <= eng.c_bound(l) + 1e-9);
      if (m.cls == MatrixClass::generic) {
        CHECK(g.c != 0);
        CHECK(g.c % 7 == 0);
      }
    }
  }
}

TEST_CASE("counts grow with delta") {
  auto z = adm(3, "1/3");
  std::vector<i64> prev(25, 0);
  for (Rational d : {Rational(1, 4), Rational(1), Rational(2), Rational(4)}) {
    CountEngine eng(z, 3, d);
    for (i64 l = 1; l < 25; ++l) {
      i64 t = eng.total(l);
      CHECK(t >= prev[static_cast<std::size_t>(l)]);
      prev[static_cast<std::size_t>(l)] = t;
    }
  }
}

TEST_CASE("parabolic count by hand") {
  auto z = adm(7, "1/7");
  CountEngine eng(z, 7, Rational(1, 8));
  CHECK(eng.parabolic(1) >= 2);
  CHECK(eng.parabolic(2) == 0);
  CHECK(eng.parabolic(3) == 0);
  // non-square l never has a parabolic matrix
  for (i64 l : {5, 6, 7, 8, 10, 12}) CHECK(eng.parabolic(l) == 0);
}

TEST_CASE("parabolic identity and its failure") {
  // The shortest vector of <1, z> has length^2 <= (2/sqrt 3) y, so for
  // delta >= 1/3 the matrix I + (pq, -p^2; q^2, -pq) is always near z.
  auto z = pt("37/101", "3/101");
  CountEngine eng(z, 101, Rational(1));
  auto lim = parabolic_range_limit(eng);
  REQUIRE(lim);
  CHECK(*lim == 283); // 101^2 / 36 = 283.36...
  CHECK_THROWS_AS(verify_parabolic_identity(eng, 284), InvalidInput);
  auto rep = verify_parabolic_identity(eng, 10);
  CHECK_FALSE(rep.holds);
  REQUIRE(rep.first_counterexample);
  CHECK(*rep.first_counterexample == 1);
  CHECK(rep.observed_at_counterexample > 2);

  // With a tiny delta only the scalar matrices survive.
  CountEngine tight(z, 101, Rational(1, 1000));
  auto ok = verify_parabolic_identity(tight, 50);
  CHECK(ok.holds);
  CHECK(ok.sum_observed == 2 * 7);
}

TEST_CASE("parabolic with the congruence") {
  auto z = pt("37/101", "3/101");
  CountEngine eng(z, 101, Rational(1));
  CHECK(eng.parabolic_congruent(1) <= eng.parabolic(1));
  CHECK(eng.parabolic_congruent(2) == 0);
}

TEST_CASE("sum_generic against termwise summation") {
  const i64 N = 101;
  // heights t/N with t <= N^{1/3}; z = i t/N itself is never admissible
  for (i64 t : {1, 2, 4}) {
    auto z = sweep_point(N, Rational(t, N), 5);
    CountEngine eng(z, N, Rational(4));
    i64 direct = 0;
    for (i64 l = 1; l <= 20; ++l) direct += eng.enumerate(l).generic;
    CHECK(sum_generic(eng, 20, GenericFilter::all).count == direct);
  }
  auto z = adm(5, "1/5");
  CountEngine eng(z, 5, Rational(4));
  CHECK(sum_generic(eng, 1, GenericFilter::all).count == eng.generic(1));
  i64 sq = 0;
  for (i64 t = 1; t <= 10; ++t) sq += eng.generic(t * t);
  CHECK(sum_generic(eng, 100, GenericFilter::squares_only).count == sq);
  CHECK(sum_generic(eng, 120, GenericFilter::squares_only).count == sq);
}

TEST_CASE("square profile equals per-l counts") {
  for (auto [y, N] : {std::pair{"1", i64{1}}, std::pair{"1/7", i64{7}}, std::pair{"1/13", i64{13}}, std::pair{"2/101", i64{101}}}) {
    auto z = adm(N, y);
    for (Rational d : {Rational(1), Rational(4)}) {
      CountEngine eng(z, N, d);
      auto prof = eng.generic_square_profile(15);
      for (i64 t = 1; t <= 15; ++t) CHECK(prof[static_cast<std::size_t>(t)] == eng.generic(t * t));
    }
  }
}

TEST_CASE("sum_pell_family") {
  auto z = adm(3, "1/3");
  CountEngine eng(z, 3, Rational(4));
  CHECK(sum_pell_family(eng, 1, 1).count == eng.generic(1));

  const i64 N = 101;
  auto w = UpperHalfPoint<Rational>(Rational(37, 101), Rational(3, 101));
  REQUIRE(check_admissible(w, N).admissible());
  CountEngine e2(w, N, Rational(4));
  i64 direct = 0;
  for (i64 l2 = 1; l2 <= 10; ++l2) direct += e2.enumerate(2 * l2 * l2).generic;
  auto rep = sum_pell_family(e2, 2, 10);
  CHECK(rep.count == direct);
  CHECK(rep.oracle_checked);

  for (i64 l1 : {3, 5, 6, 7}) {
    CountEngine e3(adm(2, "1/2"), 2, Rational(1));
    auto r = sum_pell_family(e3, l1, 8);
    INFO("l1 = ", l1);
    CHECK(r.oracle_checked);
  }
}

TEST_CASE("sum_upper") {
  auto z = adm(5, "1/5");
  CountEngine eng(z, 5, Rational(4));
  CHECK(sum_upper(eng, 1, UpperShape::l1l2).count == 0);
  i64 pairs = 0;
  for (i64 p : {2, 3, 5})
    for (i64 q : {2, 3, 5}) pairs += eng.upper(p * q);
  CHECK(sum_upper(eng, 5, UpperShape::l1l2).count == pairs);
  CHECK(sum_upper(eng, 3, UpperShape::l1sql2sq).count == eng.upper(16) + 2 * eng.upper(36) + eng.upper(81));
  CHECK(sum_upper(eng, 7, UpperShape::single_prime).count == eng.upper(2) + eng.upper(3) + eng.upper(5) + eng.upper(7));
}

TEST_CASE("query validation") {
  CHECK_THROWS_WITH_AS(enumerate(CountQuery{pt("0", "1"), 1, 12, Rational(1)}), doctest::Contains("level not square-free"), InvalidInput);
  CHECK_THROWS_AS(enumerate(CountQuery{pt("0", "1/50"), 1, 7, Rational(1)}), InvalidInput);
  CHECK_THROWS_AS(enumerate(CountQuery{pt("0", "1"), 0, 1, Rational(1)}), InvalidInput);
  CHECK_THROWS_AS(enumerate(CountQuery{pt("0", "1"), 1, 1, Rational(-1)}), InvalidInput);
  CHECK_NOTHROW(enumerate(CountQuery{pt("0", "1"), 1, 1, Rational(0)}));
}
