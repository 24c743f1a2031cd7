#pragma once

// Counting integer matrices gamma = (a b; c d) with det = l that move z by
// at most u(gamma z, z) <= delta, split into
//   generic          c != 0, c = 0 mod N, (a+d)^2 != 4l
//   upper-triangular c == 0,              (a+d)^2 != 4l
//   parabolic        (a+d)^2 == 4l, no congruence on c.
//
// Everything rests on the identity
//   u(gamma z, z) = |-c z^2 + (a-d) z + b|^2 / (4 l y^2),
// so for fixed c the pair (a-d, b) is a point of the lattice <1, z> in the
// disc of radius 2 y sqrt(delta l) about c z^2, and a+d is recovered from
//   (a+d)^2 = (a-d)^2 + 4 b c + 4 l.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "supnorm/lattice2.hpp"

namespace supnorm {

template <class Int>
struct Mat2 {
  Int a, b, c, d;
  Int det() const { return a * d - b * c; }
  Int trace() const { return a + d; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

using IntMatrix2 = Mat2<BigInt>;

enum class MatrixClass { generic, upper_triangular, parabolic };

const char* to_string(MatrixClass c);

struct ClassifiedMatrix {
  IntMatrix2 matrix;
  MatrixClass cls;
};

struct CountQuery {
  UpperHalfPoint<Rational> z;
  i64 l;
  i64 level;
  Rational delta;

  /// Throws InvalidInput for non-square-free N, inadmissible z, l < 1 or
  /// delta < 0.
  void validate() const;
};

struct CountBreakdown {
  CountQuery query;
  i64 generic = 0;
  i64 upper_triangular = 0;
  i64 parabolic = 0;
  std::vector<ClassifiedMatrix> matrices; // filled only on request

  i64 total() const { return generic + upper_triangular + parabolic; }
};

/// A lattice-point sum together with the right-hand side it is compared to.
struct BoundReport {
  i64 count = 0;
  double bound = 0;
  double ratio = 0;
  bool oracle_checked = false;
};

BoundReport make_report(i64 count, double bound);

/// Exact integer form of a rational point z = (X + iY)/Q and of delta.
struct ExactPoint {
  i128 x_num, y_num, den;          // z = (x_num + i y_num) / den
  i128 delta_num, delta_den;
  BigInt bx, by, bq, bdn, bdd;     // the same values for the overflow fallback

  static ExactPoint make(const UpperHalfPoint<Rational>& z, const Rational& delta);

  /// |-c z^2 + e z + b|^2 <= 4 delta l y^2, exactly.
  bool within(i64 c, i64 e, i64 b, i64 l) const;
  /// Scaled |P|^2 (times den^4); nullopt when it does not fit in 128 bits.
  std::optional<i128> scaled_norm(i64 c, i64 e, i64 b) const;
};

/// Per-(z, N, delta) counting context. Holds the reduced lattice and the
/// exact coordinates; every method is const and the object may be shared
/// read-only between threads.
class CountEngine {
public:
  CountEngine(UpperHalfPoint<Rational> z, i64 level, Rational delta);

  const UpperHalfPoint<Rational>& z() const { return z_; }
  i64 level() const { return level_; }
  const Rational& delta() const { return delta_; }
  double x() const { return x_; }
  double y() const { return y_; }
  double delta_d() const { return delta_d_; }
  const ReducedLattice<Rational>& lattice() const { return lattice_; }

  CountBreakdown enumerate(i64 l, bool keep_matrices = false) const;

  i64 generic(i64 l) const;
  i64 upper(i64 l) const;
  i64 parabolic(i64 l) const;
  i64 total(i64 l) const { return generic(l) + upper(l) + parabolic(l); }

  /// Parabolic matrices counted with the extra condition c = 0 mod N.
  /// Diagnostic only; not part of M.
  i64 parabolic_congruent(i64 l) const;

  /// generic(t^2) for t = 0..t_max (index 0 unused), from a single pass
  /// over the largest disc: each lattice triple (c, a-d, b) fixes
  /// m = (a-d)^2 + 4bc and the admissible t solve (a+d)^2 - 4 t^2 = m,
  /// read off from the divisors of |m|.
  std::vector<i64> generic_square_profile(i64 t_max) const;

  /// Upper bound on |c| for matrices of determinant l.
  double c_bound(i64 l) const;

  /// Visits every (c, a-d, b) with c = 0 mod N, c != 0, |c| <= c_bound(l_disc)
  /// and |P|^2 <= 4 delta l_disc y^2; the callback gets (c, e, b).
  template <class F>
  void for_each_generic_triple(i64 l_disc, F&& f) const;

  const ExactPoint& exact() const { return exact_; }

private:
  template <class F>
  void visit_generic(i64 l, F&& emit) const;
  template <class F>
  void visit_upper(i64 l, F&& emit) const;
  template <class F>
  void visit_parabolic(i64 l, bool congruent, F&& emit) const;

  UpperHalfPoint<Rational> z_;
  i64 level_;
  Rational delta_;
  double x_, y_, delta_d_;
  ReducedLattice<Rational> lattice_;
  DiscVisitor visitor_;
  ExactPoint exact_;
};

CountBreakdown enumerate(const CountQuery& q, bool keep_matrices = false);

enum class GenericFilter { all, squares_only };

/// Sum of M_* over 1 <= l <= L, or over the perfect squares only, against
/// L/(Ny) + L^{3/2}/N^{1/2} + L^2/N, resp. L^{1/2}/(Ny) + L/N^{1/2} + L^{3/2}/N.
BoundReport sum_generic(const CountEngine& eng, i64 L, GenericFilter filter);
double sum_generic_bound(double N, double y, double L, GenericFilter filter);

/// Sum over 1 <= l2 <= Lam of M_*(z, l1 l2^2, N) against
/// Lam^{3/2}/(Ny) + Lam^3/N^{1/2} + Lam^{9/2}/N. When l1 is not a perfect
/// square every lattice triple is re-solved as a Pell equation
/// X^2 - 4g Y^2 = (a-d)^2 + 4bc (l1 = f^2 g, Y = f l2) and compared with
/// the direct count; a disagreement throws ConsistencyError.
BoundReport sum_pell_family(const CountEngine& eng, i64 l1, i64 lam);
double sum_pell_family_bound(double N, double y, double lam);

enum class UpperShape { l1l2, l1l2sq, l1sql2sq, single_prime };
const char* to_string(UpperShape s);

/// Sum of M_u over the shape with l1, l2 primes <= Lam (single_prime: the
/// primes l <= Lam, Lam playing the role of L).
BoundReport sum_upper(const CountEngine& eng, i64 lam, UpperShape shape);
double sum_upper_bound(double N, double y, double lam, UpperShape shape);

struct ParabolicIdentityReport {
  bool holds = true;
  i64 checked_up_to = 0;
  std::optional<i64> first_counterexample; // smallest l with M_p != 2 delta_sq(l)
  i64 observed_at_counterexample = 0;
  i64 sum_observed = 0;
  i64 sum_expected = 0;
};

/// Largest L with L < 1/(4 delta y^2), or 0 when there is none. Unbounded
/// (nullopt) for delta = 0.
std::optional<i64> parabolic_range_limit(const CountEngine& eng);

/// Checks M_p(z, l, N) = 2 delta_sq(l) for 1 <= l <= L. Throws InvalidInput
/// when L violates L < 1/(4 delta y^2).
ParabolicIdentityReport verify_parabolic_identity(const CountEngine& eng, i64 L);

// ---------------------------------------------------------------------------

template <class F>
void CountEngine::for_each_generic_triple(i64 l_disc, F&& f) const {
  const double radius = 2.0 * y_ * std::sqrt(delta_d_ * static_cast<double>(l_disc));
  const i64 kmax = static_cast<i64>(std::floor(c_bound(l_disc) / static_cast<double>(level_)));
  const double re2 = x_ * x_ - y_ * y_, im2 = 2.0 * x_ * y_;
  for (i64 k = -kmax; k <= kmax; ++k) {
    if (k == 0) continue;
    const i64 c = k * level_;
    const double cd = static_cast<double>(c);
    visitor_.visit(cd * re2, cd * im2, radius, [&](i64 e, i64 b) {
      if (exact_.within(c, e, b, l_disc)) f(c, e, b);
    });
  }
}

} // namespace supnorm
