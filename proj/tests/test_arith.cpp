#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "supnorm/arith.hpp"

using namespace supnorm;

TEST_CASE("integer square roots") {
  for (i64 n = 0; n < 5000; ++n) {
    i64 r = isqrt(n);
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
  CHECK(isqrt(std::numeric_limits<i64>::max()) == 3037000499);
  i128 big = static_cast<i128>(1) << 100;
  CHECK(isqrt128(big) == static_cast<i64>(1) << 50);
  CHECK(isqrt128(big - 1) == (static_cast<i64>(1) << 50) - 1);
  CHECK(is_perfect_square(0));
  CHECK(is_perfect_square(49));
  CHECK_FALSE(is_perfect_square(50));
  CHECK_FALSE(is_perfect_square(-4));
}

TEST_CASE("square-free and factorization") {
  CHECK(is_square_free(1));
  CHECK(is_square_free(30));
  CHECK_FALSE(is_square_free(12));
  CHECK_FALSE(is_square_free(9998 * 4));
  CHECK(is_square_free(9998));
  for (i64 n = 1; n < 2000; ++n) {
    auto [f, g] = square_free_decomposition(n);
    CHECK(f * f * g == n);
    CHECK(is_square_free(g));
    i64 prod = 1;
    for (auto [p, e] : factorize(n))
      for (int k = 0; k < e; ++k) prod *= p;
    CHECK(prod == n);
  }
}

TEST_CASE("primes and divisors") {
  CHECK(primes_in(2, 30) == std::vector<i64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(primes_in(3, 3) == std::vector<i64>{3});
  CHECK(primes_in(24, 28).empty());
  CHECK(divisors(36) == std::vector<i64>{1, 2, 3, 4, 6, 9, 12, 18, 36});
  CHECK(divisors(1) == std::vector<i64>{1});
  FactorTable table(100000);
  std::vector<i64> out;
  for (i64 n : {1, 2, 97, 360, 65536, 99991, 100000}) {
    table.divisors(n, out);
    std::sort(out.begin(), out.end());
    CHECK(out == divisors(n));
  }
  for (i64 n = 2; n < 500; ++n) CHECK(is_prime(n) == (divisors(n).size() == 2));
}

TEST_CASE("rationals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("0.137") == Rational(137, 1000));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1//2"), ParseError);
  CHECK(format_rational(Rational(2, 4)) == "1/2");
  CHECK(format_rational(Rational(-5)) == "-5");
  CHECK(floor_q(Rational(-3, 2)) == -2);
  CHECK(ceil_q(Rational(-3, 2)) == -1);
  CHECK(floor_q(Rational(7, 1)) == 7);
  CHECK(round_q(Rational(5, 2)) == 3);
  CHECK(round_q(Rational(-5, 2)) == -2);
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.0, -2.5}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("conversions") {
  CHECK(to_i64(BigInt("123456789012")) == 123456789012);
  CHECK_THROWS_AS(to_i64(BigInt("123456789012345678901234567890")), InvalidInput);
  i128 v = static_cast<i128>(1) << 90;
  CHECK(to_big(v) == BigInt(1) << 90);
  CHECK(to_big(-v) == -(BigInt(1) << 90));
}
