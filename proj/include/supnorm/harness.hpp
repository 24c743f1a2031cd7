#pragma once

// Sweeps, persistence and the command implementations behind the CLI.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supnorm/amplifier.hpp"

namespace supnorm {

using KeyValues = std::map<std::string, std::string>;

/// Flat "key = value" text; '#' starts a comment. Throws ParseError.
KeyValues parse_key_values(std::string_view text);
KeyValues read_key_values(const std::string& path);

/// "x+yi", "x-yi", "yi", "i", "x" with rational parts, e.g. "0+1/1i".
/// Throws ParseError when malformed and InvalidInput when y <= 0.
UpperHalfPoint<Rational> parse_point(std::string_view text);
std::string format_point(const UpperHalfPoint<Rational>& z);

struct YRule {
  enum Kind { fixed, over_n, n_two_thirds } kind = n_two_thirds;
  Rational param = 1; // the value (fixed) or c in c/N

  /// n_two_thirds is round(16 N^{1/3}) / (16 N).
  Rational eval(i64 N) const;
  std::string to_string() const;
  static YRule parse(std::string_view text); // "n23", "cn:2", "fixed:1/3"
};

struct LamRule {
  bool cube_root = true;
  i64 value = 0;
  i64 eval(i64 N) const;
};

extern const std::vector<std::string> kSweepOperations;

struct SweepConfig {
  std::vector<i64> n_list;
  std::vector<YRule> y_rules{YRule{}};
  Rational delta = 1;
  LamRule lam_rule;
  std::vector<std::string> operations;
  std::string out;
  int jobs = 1;
  std::uint64_t seed = 1;
  bool timing = false;
  i64 mp_cap = 200;

  /// Keys: N_list, y_rule, delta, Lam, operations, out, jobs, seed, timing,
  /// mp_cap. Unknown keys and malformed values throw ParseError; a bad N or
  /// y throws InvalidInput.
  static SweepConfig from_key_values(const KeyValues& kv);
  void validate() const;
};

struct SweepRecord {
  i64 N = 0;
  Rational y;
  i64 lam = 0;
  Rational delta;
  std::string op;
  double count = 0;
  double bound = 0;
  double ratio = 0;
  double elapsed_ms = 0;
  bool oracle_checked = false;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

extern const char* const kRecordHeader;
std::string format_record(const SweepRecord& r);
SweepRecord parse_record(std::string_view line);

struct SkippedCell {
  i64 N;
  std::string y_rule;
  std::string op;
  std::string reason;
};

struct OpSummary {
  std::string op;
  std::size_t rows = 0;
  double max_ratio = 0;
  std::optional<double> slope; // least squares of log ratio against log N
};

struct SweepResult {
  std::vector<SweepRecord> records; // config order
  std::vector<SkippedCell> skipped;
  std::vector<OpSummary> summaries;
  std::optional<double> amplified_constant; // max of (count / Lam^2) / N^{-1/3 + 0.1}
  std::optional<std::string> consistency_failure;
};

/// Deterministic admissible point of height y for level N: x = k / (16 N)
/// with k drawn from a shuffled order seeded by (seed, N). Throws
/// InvalidInput when no admissible x of that form exists.
UpperHalfPoint<Rational> sweep_point(i64 N, const Rational& y, std::uint64_t seed);

/// Runs one (N, y, op) cell.
SweepRecord run_cell(const SweepConfig& cfg, i64 N, const YRule& rule, const std::string& op);

/// Cells are run on cfg.jobs workers and collected in config order.
SweepResult run_sweep(const SweepConfig& cfg);

std::optional<double> fit_slope(const std::vector<double>& log_x, const std::vector<double>& log_y);

void write_records(std::ostream& os, const std::vector<SweepRecord>& rows);
std::vector<SweepRecord> read_records(std::istream& is);
void write_summary(std::ostream& os, const SweepConfig& cfg, const SweepResult& res);

// Commands. Each reads its parameters from kv, prints to out and returns the
// process exit status; errors surface as exceptions.
struct CommandOptions {
  bool verbose = false;
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

int cmd_count(const KeyValues& kv, const CommandOptions& opt, std::ostream& out);
int cmd_sweep(const KeyValues& kv, const CommandOptions& opt, std::ostream& out);
int cmd_pell(const KeyValues& kv, const CommandOptions& opt, std::ostream& out);
int cmd_reduce(const KeyValues& kv, const CommandOptions& opt, std::ostream& out);
int cmd_amplify(const KeyValues& kv, const CommandOptions& opt, std::ostream& out);
int cmd_exponent(const KeyValues& kv, const CommandOptions& opt, std::ostream& out);

/// 1 usage, 2 infeasible input, 3 consistency failure.
int exit_status_for(const std::exception& e);

} // namespace supnorm
