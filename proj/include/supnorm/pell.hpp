#pragma once

// Generalized Pell equations X^2 - D Y^2 = m.

#include <utility>
#include <vector>

#include "supnorm/arith.hpp"

namespace supnorm {

struct PellPair {
  BigInt x;
  BigInt y;
  friend bool operator==(const PellPair&, const PellPair&) = default;
};

struct PellInstance {
  BigInt d;
  BigInt m;
  BigInt x_max;

  /// Validates D >= 2 non-square, m != 0 and X_max >= 1.
  PellInstance(BigInt d_, BigInt m_, BigInt x_max_);
};

struct PellSolutionSet {
  PellInstance instance;
  std::vector<PellPair> solutions; // Y >= 1, |X| <= X_max, sorted by (Y, X)
  PellPair fundamental_unit;
};

/// Minimal x, y >= 1 with x^2 - D y^2 = 1, from the continued fraction of sqrt(D).
PellPair fundamental_unit(const BigInt& d);

/// All solutions with Y >= 1 and |X| <= X_max. Class representatives are
/// scanned for 0 <= Y <= min(classical representative bound, box bound)
/// and each one is pushed through its unit orbit inside the box.
PellSolutionSet solve_in_box(const PellInstance& inst);
PellSolutionSet solve_in_box(const PellInstance& inst, const PellPair& unit);

std::size_t count_solutions(const PellInstance& inst);

/// Upper bound on the smallest |Y| in any unit orbit of solutions of
/// X^2 - D Y^2 = m: y0 sqrt(m / (2 (x0 + 1))) for m > 0 and
/// y0 sqrt(|m| / (2 (x0 - 1))) for m < 0, rounded up.
BigInt representative_bound(const BigInt& d, const BigInt& m, const PellPair& unit);

} // namespace supnorm
