#pragma once

// The amplifier y_l, the amplified count sum
//   sum_l y_l / sqrt(l) * M(z, l, N)
// split into the blocks of the error analysis, and the exact exponent
// optimization behind Lambda = N^{1/3}.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "supnorm/matcount.hpp"

namespace supnorm {

/// Which part of the support an l belongs to: 1, l1, l1 l2, l1 l2^2, l1^2 l2^2
/// (all: the whole support, used for the parabolic block).
enum class AmpRange { one, prime, prime2, prime3, prime4, all };
const char* to_string(AmpRange r);

struct AmplifierWeights {
  i64 lam;
  std::vector<i64> primes;           // primes in (lam, 2 lam)
  std::map<i64, i64> weights;        // l -> y_l, nonzero entries only
  std::map<i64, AmpRange> range_of;  // l -> block

  i64 weight(i64 l) const;
};

/// Throws InvalidInput for lam < 2.
AmplifierWeights build_weights(i64 lam);

struct LedgerBlock {
  MatrixClass cls;
  AmpRange range;
  double contribution = 0; // sum of y_l M_cls(z, l, N) / sqrt(l) over the block
  double bound = 0;
  double ratio = 0;
  i64 matrices = 0;         // unweighted count
};

struct AmplifiedSum {
  i64 lam;
  double total = 0;
  std::vector<LedgerBlock> blocks; // parabolic first, then upper, then generic
  std::map<i64, CountBreakdown> terms; // per l, without matrix lists
  bool parabolic_hypothesis = false; // lam^4 < 1/(4 delta y^2)
};

/// Block bounds of the error analysis as functions of (N, y, lam).
double ledger_bound(MatrixClass cls, AmpRange range, double N, double y, double lam);

AmplifiedSum amplified_sum(const CountEngine& eng, i64 lam);

/// The three terms lam + lam^{5/2}/N^{1/2} + lam^4/N.
std::array<double, 3> theoretical_rhs(double lam, double N, double y);

/// c_0 + c_1 alpha with exact rational coefficients.
struct AffineTerm {
  Rational slope;
  Rational intercept;
  Rational at(const Rational& alpha) const { return slope * alpha + intercept; }
  friend bool operator==(const AffineTerm&, const AffineTerm&) = default;
};

struct ExponentProblem {
  std::vector<AffineTerm> terms;

  /// (max of terms - 2 alpha) / 2
  Rational objective(const Rational& alpha) const;
  static ExponentProblem default_triple();
};

struct ExponentSolution {
  Rational alpha;
  Rational value;
};

/// Minimizes the objective over alpha in [0, 1] by evaluating the endpoints
/// and all pairwise intersections in the interval. Ties go to the smallest
/// alpha. Throws InvalidInput for an empty problem.
ExponentSolution optimize_exponent(const ExponentProblem& p);

/// Parses "a", "5a/2-1/2", "4*a - 1", "0", ... (the variable is a).
/// Throws ParseError.
AffineTerm parse_affine(std::string_view text);
/// Comma-separated list of terms.
ExponentProblem parse_terms(std::string_view text);
std::string format_affine(const AffineTerm& t);

} // namespace supnorm
