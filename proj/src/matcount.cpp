#include "supnorm/matcount.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "supnorm/pell.hpp"

namespace supnorm {

const char* to_string(MatrixClass c) {
  switch (c) {
  case MatrixClass::generic: return "generic";
  case MatrixClass::upper_triangular: return "upper";
  case MatrixClass::parabolic: return "parabolic";
  }
  return "?";
}

const char* to_string(UpperShape s) {
  switch (s) {
  case UpperShape::l1l2: return "l1*l2";
  case UpperShape::l1l2sq: return "l1*l2^2";
  case UpperShape::l1sql2sq: return "l1^2*l2^2";
  case UpperShape::single_prime: return "prime";
  }
  return "?";
}

BoundReport make_report(i64 count, double bound) {
  BoundReport r;
  r.count = count;
  r.bound = bound;
  r.ratio = bound > 0 ? static_cast<double>(count) / bound : 0.0;
  return r;
}

void CountQuery::validate() const {
  if (l < 1) throw InvalidInput("determinant l must be positive");
  if (delta < 0) throw InvalidInput("proximity threshold delta must be non-negative");
  if (!is_square_free(level)) throw InvalidInput("level not square-free: " + std::to_string(level));
  auto rep = check_admissible(z, level);
  if (!rep.ny_ok) throw InvalidInput("inadmissible point: N*y < 1");
  if (!rep.shortest_ok) throw InvalidInput("inadmissible point: |a z + b|^2 < 1/N for (a, b) = (" + std::to_string(rep.witness.first) + ", " + std::to_string(rep.witness.second) + ")");
}

// ---------------------------------------------------------------------------
// ExactPoint

namespace {

constexpr long double kI128Safe = 1e37L;

i128 to_i128_checked(const BigInt& v, const char* what) {
  if (!v.fits_slong_p()) throw InvalidInput(std::string("coordinate too large for exact enumeration: ") + what);
  return static_cast<i128>(v.get_si());
}

BigInt big(i64 v) { return BigInt(static_cast<long>(v)); }

} // namespace

ExactPoint ExactPoint::make(const UpperHalfPoint<Rational>& z, const Rational& delta) {
  ExactPoint p;
  BigInt q;
  mpz_lcm(q.get_mpz_t(), z.x.get_den_mpz_t(), z.y.get_den_mpz_t());
  BigInt xn = z.x.get_num() * (q / z.x.get_den());
  BigInt yn = z.y.get_num() * (q / z.y.get_den());
  if (abs(q) > BigInt(1) << 40 || abs(xn) > BigInt(1) << 40)
    throw InvalidInput("point coordinates exceed the exact enumeration range");
  p.bx = xn;
  p.by = yn;
  p.bq = q;
  p.bdn = delta.get_num();
  p.bdd = delta.get_den();
  p.x_num = to_i128_checked(xn, "x");
  p.y_num = to_i128_checked(yn, "y");
  p.den = to_i128_checked(q, "denominator");
  p.delta_num = to_i128_checked(p.bdn, "delta");
  p.delta_den = to_i128_checked(p.bdd, "delta");
  return p;
}

std::optional<i128> ExactPoint::scaled_norm(i64 c, i64 e, i64 b) const {
  long double X = static_cast<long double>(x_num), Y = static_cast<long double>(y_num), Q = static_cast<long double>(den);
  long double cr = static_cast<long double>(c), er = static_cast<long double>(e), br = static_cast<long double>(b);
  long double re_est = std::abs(cr) * (X * X + Y * Y) + std::abs(er * Q * X) + std::abs(br * Q * Q);
  long double im_est = std::abs(2 * cr * X * Y) + std::abs(er * Q * Y);
  if (re_est > 5e18L || im_est > 5e18L) return std::nullopt;
  i128 re = -static_cast<i128>(c) * (x_num * x_num - y_num * y_num) + static_cast<i128>(e) * den * x_num + static_cast<i128>(b) * den * den;
  i128 im = -static_cast<i128>(c) * 2 * x_num * y_num + static_cast<i128>(e) * den * y_num;
  return re * re + im * im;
}

bool ExactPoint::within(i64 c, i64 e, i64 b, i64 l) const {
  auto w = scaled_norm(c, e, b);
  long double rhs_est = 4.0L * static_cast<long double>(delta_num) * static_cast<long double>(l) *
                        static_cast<long double>(y_num) * static_cast<long double>(y_num) *
                        static_cast<long double>(den) * static_cast<long double>(den);
  if (w && static_cast<long double>(*w) * static_cast<long double>(delta_den) < kI128Safe && rhs_est < kI128Safe) {
    i128 rhs = 4 * delta_num * static_cast<i128>(l) * y_num * y_num * den * den;
    return delta_den * *w <= rhs;
  }
  BigInt bc = big(c), be = big(e), bb = big(b);
  BigInt re = -bc * (bx * bx - by * by) + be * bq * bx + bb * bq * bq;
  BigInt im = -bc * 2 * bx * by + be * bq * by;
  BigInt lhs = bdd * (re * re + im * im);
  BigInt rhs = 4 * bdn * big(l) * by * by * bq * bq;
  return lhs <= rhs;
}

// ---------------------------------------------------------------------------
// CountEngine

CountEngine::CountEngine(UpperHalfPoint<Rational> z, i64 level, Rational delta)
    : z_(std::move(z)),
      level_(level),
      delta_(std::move(delta)),
      x_(z_.x.get_d()),
      y_(z_.y.get_d()),
      delta_d_(delta_.get_d()),
      lattice_(reduce(z_)),
      visitor_(lattice_),
      exact_(ExactPoint::make(z_, delta_)) {
  CountQuery{z_, 1, level_, delta_}.validate();
}

double CountEngine::c_bound(i64 l) const {
  double sl = std::sqrt(static_cast<double>(l));
  return sl * (std::sqrt(delta_d_) + std::sqrt(1.0 + delta_d_)) / y_ * (1.0 + 1e-12) + 1e-9;
}

template <class F>
void CountEngine::visit_generic(i64 l, F&& emit) const {
  for_each_generic_triple(l, [&](i64 c, i64 e, i64 b) {
    i128 m = static_cast<i128>(e) * e + 4 * static_cast<i128>(b) * c;
    if (m == 0) return;
    i128 v = m + 4 * static_cast<i128>(l);
    if (v < 0) return;
    i64 s = isqrt128(v);
    if (static_cast<i128>(s) * s != v) return;
    emit(c, e, b, s);
    if (s != 0) emit(c, e, b, -s);
  });
}

template <class F>
void CountEngine::visit_upper(i64 l, F&& emit) const {
  const double radius_sq = 4.0 * delta_d_ * static_cast<double>(l) * y_ * y_;
  for (i64 dv : divisors(l)) {
    for (i64 a : {dv, -dv}) {
      i64 d = l / a;
      if (a == d) continue; // trace^2 = 4l: parabolic
      i64 e = a - d;
      double im = static_cast<double>(e) * y_;
      double rem = radius_sq - im * im;
      if (rem < -1e-9 * (1.0 + radius_sq)) continue;
      double w = std::sqrt(std::max(0.0, rem));
      double mid = -static_cast<double>(e) * x_;
      double tau = 1e-9 * (1.0 + std::abs(mid) + w);
      i64 lo = static_cast<i64>(std::ceil(mid - w - tau));
      i64 hi = static_cast<i64>(std::floor(mid + w + tau));
      for (i64 b = lo; b <= hi; ++b)
        if (exact_.within(0, e, b, l)) emit(a, b, d);
    }
  }
}

template <class F>
void CountEngine::visit_parabolic(i64 l, bool congruent, F&& emit) const {
  if (!is_perfect_square(l)) return;
  const i64 t = isqrt(l);
  // gamma = (s/2) I + k (pq, -p^2; q^2, -pq) with s = +-2t, (p, q) primitive.
  for (i64 s2 : {t, -t}) emit(s2, i64{0}, i64{0}, s2);
  if (delta_d_ == 0) return;
  const double lam1_sq = lattice_.lambda1 * lattice_.lambda1;
  const double reach = 2.0 * static_cast<double>(t) * y_ * std::sqrt(delta_d_) * (1.0 + 1e-9);
  const i64 kmax = static_cast<i64>(std::floor(reach / lam1_sq));
  for (i64 k = 1; k <= kmax; ++k) {
    double rho = reach / static_cast<double>(k);
    visitor_.visit(0.0, 0.0, std::sqrt(rho), [&](i64 q, i64 mp) {
      if (q < 0 || (q == 0 && mp <= 0)) return;
      if (gcd(q, mp) != 1) return;
      const i64 p = -mp;
      for (i64 kk : {k, -k}) {
        i64 f = kk * p * q, bb = -kk * p * p, cc = kk * q * q;
        if (congruent && cc % level_ != 0) continue;
        if (!exact_.within(cc, 2 * f, bb, l)) continue;
        for (i64 s2 : {t, -t}) emit(s2 + f, bb, cc, s2 - f);
      }
    });
  }
}

CountBreakdown CountEngine::enumerate(i64 l, bool keep_matrices) const {
  CountBreakdown out{CountQuery{z_, l, level_, delta_}, 0, 0, 0, {}};
  if (l < 1) throw InvalidInput("determinant l must be positive");
  auto keep = [&](i64 a, i64 b, i64 c, i64 d, MatrixClass cls) {
    if (keep_matrices) out.matrices.push_back({IntMatrix2{big(a), big(b), big(c), big(d)}, cls});
  };
  visit_generic(l, [&](i64 c, i64 e, i64 b, i64 s) {
    ++out.generic;
    keep((s + e) / 2, b, c, (s - e) / 2, MatrixClass::generic);
  });
  visit_upper(l, [&](i64 a, i64 b, i64 d) {
    ++out.upper_triangular;
    keep(a, b, 0, d, MatrixClass::upper_triangular);
  });
  visit_parabolic(l, false, [&](i64 a, i64 b, i64 c, i64 d) {
    ++out.parabolic;
    keep(a, b, c, d, MatrixClass::parabolic);
  });
  return out;
}

i64 CountEngine::generic(i64 l) const {
  i64 n = 0;
  visit_generic(l, [&](i64, i64, i64, i64) { ++n; });
  return n;
}

i64 CountEngine::upper(i64 l) const {
  i64 n = 0;
  visit_upper(l, [&](i64, i64, i64) { ++n; });
  return n;
}

i64 CountEngine::parabolic(i64 l) const {
  i64 n = 0;
  visit_parabolic(l, false, [&](i64, i64, i64, i64) { ++n; });
  return n;
}

i64 CountEngine::parabolic_congruent(i64 l) const {
  i64 n = 0;
  visit_parabolic(l, true, [&](i64, i64, i64, i64) { ++n; });
  return n;
}

namespace {

/// Smallest t >= 1 with delta_den * w <= 4 delta_num t^2 y_num^2 den^2, or
/// nullopt if none (delta = 0 and w > 0).
std::optional<i64> min_trace_index(const ExactPoint& ex, i64 c, i64 e, i64 b) {
  if (ex.delta_num == 0) {
    if (ex.within(c, e, b, 1)) return 1;
    return std::nullopt;
  }
  auto w = ex.scaled_norm(c, e, b);
  long double scale = 4.0L * static_cast<long double>(ex.delta_num) * static_cast<long double>(ex.y_num) *
                      static_cast<long double>(ex.y_num) * static_cast<long double>(ex.den) * static_cast<long double>(ex.den);
  i64 t;
  if (w) {
    long double guess = std::sqrt(static_cast<long double>(*w) * static_cast<long double>(ex.delta_den) / scale);
    t = std::max<i64>(1, static_cast<i64>(std::ceil(guess)));
  } else {
    t = 1;
  }
  // within() is exact; step to the true threshold.
  while (t > 1 && ex.within(c, e, b, (t - 1) * (t - 1))) --t;
  while (!ex.within(c, e, b, t * t)) ++t;
  return t;
}

} // namespace

std::vector<i64> CountEngine::generic_square_profile(i64 t_max) const {
  std::vector<i64> profile(static_cast<std::size_t>(std::max<i64>(t_max, 0)) + 1, 0);
  if (t_max < 1) return profile;
  const i64 l_max = t_max * t_max;
  // Valid triples have -4 t^2 <= m = s^2 - 4 t^2 <= 4 t^2 delta.
  const double m_cap = 4.0 * static_cast<double>(l_max) * std::max(1.0, delta_d_) + 16.0;
  std::unique_ptr<FactorTable> table;
  if (m_cap <= 4e8) table = std::make_unique<FactorTable>(static_cast<i64>(m_cap));
  std::vector<i64> divs;
  for_each_generic_triple(l_max, [&](i64 c, i64 e, i64 b) {
    i128 m = static_cast<i128>(e) * e + 4 * static_cast<i128>(b) * c;
    if (m == 0 || m < -4 * static_cast<i128>(l_max)) return;
    auto tmin = min_trace_index(exact_, c, e, b);
    if (!tmin || *tmin > t_max) return;
    const i64 am = static_cast<i64>(m < 0 ? -m : m);
    if (table && am <= table->limit()) {
      table->divisors(am, divs);
    } else {
      divs = divisors(am);
    }
    for (i64 u : divs) {
      const i64 v = am / u;
      if (m < 0) {
        // 4t^2 - s^2 = |m| = u v with u = 2t - s, v = 2t + s.
        if ((u + v) % 4) continue;
        const i64 t = (u + v) / 4;
        if (t >= *tmin && t <= t_max) profile[static_cast<std::size_t>(t)] += 1;
      } else {
        // s^2 - 4t^2 = m = u v with u = |s| - 2t, v = |s| + 2t.
        if (v <= u || (v - u) % 4) continue;
        const i64 t = (v - u) / 4;
        if (t >= *tmin && t <= t_max) profile[static_cast<std::size_t>(t)] += 2;
      }
    }
  });
  return profile;
}

CountBreakdown enumerate(const CountQuery& q, bool keep_matrices) {
  q.validate();
  CountEngine eng(q.z, q.level, q.delta);
  return eng.enumerate(q.l, keep_matrices);
}

// ---------------------------------------------------------------------------
// Sums over l

double sum_generic_bound(double N, double y, double L, GenericFilter filter) {
  if (filter == GenericFilter::all) return L / (N * y) + std::pow(L, 1.5) / std::sqrt(N) + L * L / N;
  return std::sqrt(L) / (N * y) + L / std::sqrt(N) + std::pow(L, 1.5) / N;
}

BoundReport sum_generic(const CountEngine& eng, i64 L, GenericFilter filter) {
  if (L < 1) throw InvalidInput("L must be positive");
  i64 total = 0;
  if (filter == GenericFilter::all) {
    for (i64 l = 1; l <= L; ++l) total += eng.generic(l);
  } else {
    auto prof = eng.generic_square_profile(isqrt(L));
    for (i64 v : prof) total += v;
  }
  return make_report(total, sum_generic_bound(static_cast<double>(eng.level()), eng.y(), static_cast<double>(L), filter));
}

double sum_pell_family_bound(double N, double y, double lam) {
  return std::pow(lam, 1.5) / (N * y) + std::pow(lam, 3.0) / std::sqrt(N) + std::pow(lam, 4.5) / N;
}

BoundReport sum_pell_family(const CountEngine& eng, i64 l1, i64 lam) {
  if (l1 < 1 || lam < l1) throw InvalidInput("sum_pell_family requires 1 <= l1 <= Lam");
  i64 direct = 0;
  for (i64 l2 = 1; l2 <= lam; ++l2) direct += eng.generic(l1 * l2 * l2);
  BoundReport rep = make_report(direct, sum_pell_family_bound(static_cast<double>(eng.level()), eng.y(), static_cast<double>(lam)));

  auto [f, g] = square_free_decomposition(l1);
  if (g == 1) return rep; // l1 a square: the equation degenerates to a divisor problem

  const BigInt disc = BigInt(4) * big(g);
  const PellPair unit = fundamental_unit(disc);
  const i64 l_top = l1 * lam * lam;
  const BigInt x_max = BigInt(isqrt(static_cast<i64>(std::floor(4.0 * static_cast<double>(l_top) * (1.0 + eng.delta_d()))))) + 2;
  const ExactPoint& ex = eng.exact();

  i64 via_pell = 0;
  eng.for_each_generic_triple(l_top, [&](i64 c, i64 e, i64 b) {
    i128 m = static_cast<i128>(e) * e + 4 * static_cast<i128>(b) * c;
    if (m == 0) return;
    std::vector<std::pair<i64, i64>> direct_set, pell_set;
    for (i64 l2 = 1; l2 <= lam; ++l2) {
      const i64 l = l1 * l2 * l2;
      i128 v = m + 4 * static_cast<i128>(l);
      if (v < 0) continue;
      i64 s = isqrt128(v);
      if (static_cast<i128>(s) * s != v || !ex.within(c, e, b, l)) continue;
      direct_set.emplace_back(s, l2);
      if (s) direct_set.emplace_back(-s, l2);
    }
    if (m + 4 * static_cast<i128>(l_top) >= 0) {
      PellInstance inst(disc, to_big(m), x_max);
      for (const auto& sol : solve_in_box(inst, unit).solutions) {
        if (sol.y % f != 0) continue;
        BigInt l2b = sol.y / f;
        if (l2b < 1 || l2b > lam) continue;
        const i64 l2 = l2b.get_si();
        if (!ex.within(c, e, b, l1 * l2 * l2)) continue;
        pell_set.emplace_back(sol.x.get_si(), l2);
      }
    }
    std::sort(direct_set.begin(), direct_set.end());
    std::sort(pell_set.begin(), pell_set.end());
    if (direct_set != pell_set)
      throw ConsistencyError("Pell cross-check failed at (c, a-d, b) = (" + std::to_string(c) + ", " + std::to_string(e) + ", " + std::to_string(b) + ")");
    via_pell += static_cast<i64>(pell_set.size());
  });
  if (via_pell != direct)
    throw ConsistencyError("Pell route total " + std::to_string(via_pell) + " differs from direct count " + std::to_string(direct));
  rep.oracle_checked = true;
  return rep;
}

double sum_upper_bound(double N, double y, double lam, UpperShape shape) {
  const double sn = std::sqrt(N);
  switch (shape) {
  case UpperShape::l1l2: return lam + lam * lam * sn * y + std::pow(lam, 3.0) * y;
  case UpperShape::l1l2sq: return lam + std::pow(lam, 2.5) * sn * y + std::pow(lam, 4.0) * y;
  case UpperShape::l1sql2sq: return 1.0 + lam * lam * sn * y + std::pow(lam, 4.0) * y;
  case UpperShape::single_prime: return 1.0 + std::sqrt(lam) * sn * y + lam * y;
  }
  return 0;
}

BoundReport sum_upper(const CountEngine& eng, i64 lam, UpperShape shape) {
  if (lam < 1) throw InvalidInput("Lam must be positive");
  const auto primes = primes_in(2, lam);
  std::map<i64, i64> cache;
  auto mu = [&](i64 l) {
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    return cache[l] = eng.upper(l);
  };
  i64 total = 0;
  if (shape == UpperShape::single_prime) {
    for (i64 p : primes) total += mu(p);
  } else {
    for (i64 p : primes)
      for (i64 q : primes) {
        i64 l = shape == UpperShape::l1l2 ? p * q : shape == UpperShape::l1l2sq ? p * q * q : p * p * q * q;
        total += mu(l);
      }
  }
  return make_report(total, sum_upper_bound(static_cast<double>(eng.level()), eng.y(), static_cast<double>(lam), shape));
}

std::optional<i64> parabolic_range_limit(const CountEngine& eng) {
  if (eng.delta() == 0) return std::nullopt;
  Rational inv = 1 / (4 * eng.delta() * eng.z().y * eng.z().y);
  BigInt lim = ceil_q(inv) - 1;
  if (lim < 0) return 0;
  if (!lim.fits_slong_p()) return std::numeric_limits<i64>::max();
  return lim.get_si();
}

ParabolicIdentityReport verify_parabolic_identity(const CountEngine& eng, i64 L) {
  if (auto lim = parabolic_range_limit(eng); lim && L > *lim)
    throw InvalidInput("range violation: L = " + std::to_string(L) + " does not satisfy L < 1/(4 delta y^2)");
  ParabolicIdentityReport rep;
  rep.checked_up_to = L;
  for (i64 l = 1; l <= L; ++l) {
    i64 observed = eng.parabolic(l);
    i64 expected = is_perfect_square(l) ? 2 : 0;
    rep.sum_observed += observed;
    rep.sum_expected += expected;
    if (observed != expected && rep.holds) {
      rep.holds = false;
      rep.first_counterexample = l;
      rep.observed_at_counterexample = observed;
    }
  }
  return rep;
}

} // namespace supnorm
