#include "supnorm/pell.hpp"

#include <algorithm>
#include <set>

namespace supnorm {

namespace {

bool perfect_square(const BigInt& n, BigInt& root) {
  if (n < 0) return false;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return true;
}

void require_pell_discriminant(const BigInt& d) {
  if (d < 2) throw InvalidInput("Pell discriminant must be at least 2");
  if (mpz_perfect_square_p(d.get_mpz_t())) throw InvalidInput("Pell discriminant is a perfect square: " + d.get_str());
}

BigInt isqrt_big(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

} // namespace

PellInstance::PellInstance(BigInt d_, BigInt m_, BigInt x_max_) : d(std::move(d_)), m(std::move(m_)), x_max(std::move(x_max_)) {
  require_pell_discriminant(d);
  if (m == 0) throw InvalidInput("Pell right-hand side must be nonzero");
  if (x_max < 1) throw InvalidInput("Pell box bound must be positive");
}

PellPair fundamental_unit(const BigInt& d) {
  require_pell_discriminant(d);
  const BigInt a0 = isqrt_big(d);
  // Convergents p/q of the continued fraction of sqrt(D); stop at the
  // first one with p^2 - D q^2 = 1.
  BigInt m = 0, den = 1, a = a0;
  BigInt p_prev = 1, p = a0;
  BigInt q_prev = 0, q = 1;
  while (p * p - d * q * q != 1) {
    m = den * a - m;
    den = (d - m * m) / den;
    a = (a0 + m) / den;
    BigInt p_next = a * p + p_prev;
    BigInt q_next = a * q + q_prev;
    p_prev = std::move(p);
    p = std::move(p_next);
    q_prev = std::move(q);
    q = std::move(q_next);
  }
  return {p, q};
}

BigInt representative_bound(const BigInt& d, const BigInt& m, const PellPair& unit) {
  (void)d;
  BigInt am = abs(m);
  BigInt denom = m > 0 ? BigInt(2 * (unit.x + 1)) : BigInt(2 * (unit.x - 1));
  // ceil(y0 * sqrt(|m| / denom)) <= 1 + isqrt(y0^2 |m| / denom)
  BigInt v = unit.y * unit.y * am / denom;
  return isqrt_big(v) + 1;
}

PellSolutionSet solve_in_box(const PellInstance& inst) { return solve_in_box(inst, fundamental_unit(inst.d)); }

PellSolutionSet solve_in_box(const PellInstance& inst, const PellPair& unit) {
  const BigInt& d = inst.d;
  const BigInt& m = inst.m;
  const BigInt& x_max = inst.x_max;

  // Any in-box solution has D Y^2 = X^2 - m <= X_max^2 + |m|.
  BigInt y_box = isqrt_big((x_max * x_max + abs(m)) / d) + 1;
  BigInt y_rep = std::min(representative_bound(d, m, unit), y_box);

  auto cmp = [](const PellPair& l, const PellPair& r) { return l.y != r.y ? l.y < r.y : l.x < r.x; };
  std::set<PellPair, decltype(cmp)> found(cmp);
  auto in_box = [&](const PellPair& s) { return abs(s.x) <= x_max; };

  BigInt root;
  for (BigInt y = 0; y <= y_rep; ++y) {
    BigInt rhs = m + d * y * y;
    if (!perfect_square(rhs, root)) continue;
    for (int sx : {1, -1}) {
      for (int sy : {1, -1}) {
        PellPair s{sx * root, sy * y};
        // The in-box part of an orbit is contiguous, so walking forward
        // until the first exit collects it.
        while (in_box(s)) {
          if (s.y >= 1) found.insert(s);
          if (s.y <= -1) found.insert({s.x, -s.y});
          PellPair next{unit.x * s.x + d * unit.y * s.y, unit.x * s.y + unit.y * s.x};
          s = std::move(next);
        }
      }
    }
  }
  PellSolutionSet out{inst, {}, unit};
  for (const auto& s : found) {
    out.solutions.push_back(s);
    PellPair neg{-s.x, s.y};
    if (!found.count(neg)) out.solutions.push_back(neg);
  }
  std::sort(out.solutions.begin(), out.solutions.end(), cmp);
  out.solutions.erase(std::unique(out.solutions.begin(), out.solutions.end()), out.solutions.end());
  return out;
}

std::size_t count_solutions(const PellInstance& inst) { return solve_in_box(inst).solutions.size(); }

} // namespace supnorm
