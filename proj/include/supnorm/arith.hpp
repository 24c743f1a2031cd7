#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace supnorm {

using BigInt = mpz_class;
using Rational = mpq_class;
using i64 = std::int64_t;
using i128 = __int128;

/// Input that violates a documented precondition (maps to CLI exit status 2).
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input (maps to CLI exit status 1).
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two independent computations disagreed (maps to CLI exit status 3).
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Integers

/// floor(sqrt(n)) for n >= 0.
i64 isqrt(i64 n);
i64 isqrt128(i128 n);
bool is_perfect_square(i64 n);
bool is_square_free(i64 n);
i64 gcd(i64 a, i64 b);

/// Primes p with lo <= p <= hi, sieve of Eratosthenes.
std::vector<i64> primes_in(i64 lo, i64 hi);
bool is_prime(i64 n);

/// Writes n = f^2 * g with g square-free; returns {f, g}.
std::pair<i64, i64> square_free_decomposition(i64 n);

/// Prime factorization by trial division, (prime, exponent) pairs ascending.
std::vector<std::pair<i64, int>> factorize(i64 n);

/// All positive divisors of n > 0, ascending.
std::vector<i64> divisors(i64 n);

/// Smallest-prime-factor table over [0, limit]. Entry 0 marks a prime (or 0/1);
/// composites store their least prime factor, which always fits in 16 bits
/// for limit < 2^32.
class FactorTable {
public:
  explicit FactorTable(i64 limit);
  i64 limit() const { return limit_; }
  /// Positive divisors of 1 <= n <= limit(), unordered.
  void divisors(i64 n, std::vector<i64>& out) const;

private:
  i64 limit_;
  std::vector<std::uint16_t> spf_;
};

// ---------------------------------------------------------------------------
// Rationals

/// floor(q) and ceil(q) as BigInt.
BigInt floor_q(const Rational& q);
BigInt ceil_q(const Rational& q);
/// Nearest integer, halves rounded up.
BigInt round_q(const Rational& q);

/// Parses "p/q", "p" or a finite decimal such as "-0.137".
Rational parse_rational(std::string_view text);
/// "p/q" (or "p" when q = 1).
std::string format_rational(const Rational& q);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

inline i64 to_i64(const BigInt& v) {
  if (!v.fits_slong_p()) throw InvalidInput("integer exceeds 64-bit range: " + v.get_str());
  return v.get_si();
}

inline BigInt to_big(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt hi = BigInt(static_cast<unsigned long>(u >> 64));
  BigInt r = (hi << 64) + BigInt(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  return neg ? BigInt(-r) : r;
}

} // namespace supnorm
