#include "supnorm/arith.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

namespace supnorm {

i64 isqrt(i64 n) {
  if (n < 0) throw InvalidInput("isqrt of negative value");
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

i64 isqrt128(i128 n) {
  if (n < 0) throw InvalidInput("isqrt of negative value");
  i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(i64 n) {
  if (n < 0) return false;
  i64 r = isqrt(n);
  return r * r == n;
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

bool is_square_free(i64 n) {
  if (n <= 0) return false;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::vector<i64> primes_in(i64 lo, i64 hi) {
  std::vector<i64> out;
  if (hi < 2 || hi < lo) return out;
  std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
  for (i64 p = 2; p * p <= hi; ++p)
    if (!composite[p])
      for (i64 q = p * p; q <= hi; q += p) composite[q] = true;
  for (i64 p = std::max<i64>(lo, 2); p <= hi; ++p)
    if (!composite[p]) out.push_back(p);
  return out;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n <= 0) throw InvalidInput("factorize requires a positive integer");
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::pair<i64, i64> square_free_decomposition(i64 n) {
  i64 f = 1, g = 1;
  for (auto [p, e] : factorize(n)) {
    for (int i = 0; i < e / 2; ++i) f *= p;
    if (e % 2) g *= p;
  }
  return {f, g};
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t base = out.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FactorTable::FactorTable(i64 limit) : limit_(std::max<i64>(limit, 1)), spf_(static_cast<std::size_t>(limit_) + 1, 0) {
  for (i64 p = 2; p * p <= limit_; ++p) {
    if (spf_[p]) continue;
    for (i64 q = p * p; q <= limit_; q += p)
      if (!spf_[q]) spf_[q] = static_cast<std::uint16_t>(p);
  }
}

void FactorTable::divisors(i64 n, std::vector<i64>& out) const {
  out.clear();
  out.push_back(1);
  while (n > 1) {
    i64 p = spf_[n] ? spf_[n] : n;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    std::size_t base = out.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
}

BigInt floor_q(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt ceil_q(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt round_q(const Rational& q) { return floor_q(q + Rational(1, 2)); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto strip = [](std::string& v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.erase(v.begin());
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.pop_back();
  };
  strip(s);
  auto valid_int = [](const std::string& v) {
    std::size_t i = (!v.empty() && (v[0] == '-' || v[0] == '+')) ? 1 : 0;
    if (i >= v.size()) return false;
    return std::all_of(v.begin() + static_cast<long>(i), v.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
  };
  auto to_big = [](std::string v) {
    if (!v.empty() && v[0] == '+') v.erase(v.begin());
    return BigInt(v);
  };
  if (s.empty()) throw ParseError("empty rational");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw ParseError("malformed rational: " + s);
    BigInt d = to_big(den);
    if (d == 0) throw ParseError("zero denominator: " + s);
    Rational r(to_big(num), d);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (ip.empty() || ip == "-" || ip == "+") ip += "0";
    if (!valid_int(ip) || (fp.empty() ? false : !valid_int(fp)) || (!fp.empty() && (fp[0] == '-' || fp[0] == '+')))
      throw ParseError("malformed decimal: " + s);
    BigInt scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    BigInt frac = fp.empty() ? BigInt(0) : BigInt(fp);
    BigInt whole = to_big(ip);
    BigInt num = (neg ? BigInt(-1) : BigInt(1)) * (abs(whole) * scale + frac);
    Rational r(num, scale);
    r.canonicalize();
    return r;
  }
  if (!valid_int(s)) throw ParseError("malformed rational: " + s);
  return Rational(to_big(s));
}

std::string format_rational(const Rational& r) {
  Rational q = r;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

} // namespace supnorm
