#include "supnorm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "supnorm/pell.hpp"

namespace supnorm {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t next = s.find(sep, pos);
    std::string part = trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (!part.empty()) out.push_back(part);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

i64 parse_int(std::string_view s, const std::string& key) {
  std::string t = trim(s);
  i64 v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty())
    throw ParseError("malformed integer for " + key + ": '" + t + "'");
  return v;
}

double parse_real(std::string_view s) {
  std::string t = trim(s);
  double v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) throw ParseError("malformed number: '" + t + "'");
  return v;
}

bool parse_bool(std::string_view s, const std::string& key) {
  std::string t = trim(s);
  if (t == "on" || t == "true" || t == "1" || t == "yes") return true;
  if (t == "off" || t == "false" || t == "0" || t == "no") return false;
  throw ParseError("malformed flag for " + key + ": '" + t + "'");
}

const std::string& need(const KeyValues& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ParseError("missing parameter: " + key);
  return it->second;
}

std::optional<std::string> maybe(const KeyValues& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) return std::nullopt;
  return it->second;
}

double elapsed_ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t lineno = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value: '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("empty key: '" + line + "'");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

UpperHalfPoint<Rational> parse_point(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty point");
  Rational x = 0, y = 0;
  if (s.back() != 'i') {
    x = parse_rational(s);
  } else {
    s.pop_back();
    // split at the last sign that is not at the front and not after '/' or 'e'
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != 'e' && s[k - 1] != 'E') {
        cut = k;
        break;
      }
    std::string re = cut == std::string::npos ? "" : s.substr(0, cut);
    std::string im = cut == std::string::npos ? s : s.substr(cut);
    if (im == "" || im == "+") im = "1";
    if (im == "-") im = "-1";
    if (!re.empty()) x = parse_rational(re);
    y = parse_rational(im[0] == '+' ? im.substr(1) : im);
  }
  return UpperHalfPoint<Rational>(x, y);
}

std::string format_point(const UpperHalfPoint<Rational>& z) {
  return format_rational(z.x) + "+" + format_rational(z.y) + "i";
}

// ---------------------------------------------------------------------------
// Config

Rational YRule::eval(i64 N) const {
  switch (kind) {
  case fixed: return param;
  case over_n: return param / Rational(BigInt(static_cast<long>(N)));
  case n_two_thirds: {
    long num = std::lround(16.0 * std::cbrt(static_cast<double>(N)));
    Rational r(BigInt(num), BigInt(16) * static_cast<long>(N));
    r.canonicalize();
    return r;
  }
  }
  return 0;
}

std::string YRule::to_string() const {
  switch (kind) {
  case fixed: return "fixed:" + format_rational(param);
  case over_n: return "cn:" + format_rational(param);
  case n_two_thirds: return "n23";
  }
  return "?";
}

YRule YRule::parse(std::string_view text) {
  std::string t = trim(text);
  if (t == "n23") return {n_two_thirds, 1};
  auto colon = t.find(':');
  if (colon != std::string::npos) {
    std::string k = t.substr(0, colon);
    Rational v = parse_rational(t.substr(colon + 1));
    if (v <= 0) throw InvalidInput("y rule parameter must be positive: '" + t + "'");
    if (k == "cn") return {over_n, v};
    if (k == "fixed") return {fixed, v};
  }
  throw ParseError("unknown y rule: '" + t + "' (expected n23, cn:<c> or fixed:<y>)");
}

i64 LamRule::eval(i64 N) const {
  if (!cube_root) return value;
  return std::max<i64>(2, std::lround(std::cbrt(static_cast<double>(N))));
}

const std::vector<std::string> kSweepOperations{"lem_ht", "lsquare", "lem_new", "mu2", "mu3", "mu4", "mu_prime", "mp", "amplified"};

SweepConfig SweepConfig::from_key_values(const KeyValues& kv) {
  SweepConfig c;
  for (const auto& [key, value] : kv) {
    if (key == "N_list") {
      c.n_list.clear();
      for (const auto& p : split(value, ',')) c.n_list.push_back(parse_int(p, key));
    } else if (key == "y_rule") {
      c.y_rules.clear();
      for (const auto& p : split(value, ',')) c.y_rules.push_back(YRule::parse(p));
    } else if (key == "delta") {
      c.delta = parse_rational(value);
    } else if (key == "Lam") {
      if (trim(value) == "cbrt") {
        c.lam_rule = {true, 0};
      } else {
        c.lam_rule = {false, parse_int(value, key)};
      }
    } else if (key == "operations") {
      c.operations = split(value, ',');
      for (const auto& op : c.operations)
        if (std::find(kSweepOperations.begin(), kSweepOperations.end(), op) == kSweepOperations.end())
          throw ParseError("unknown operation: " + op);
    } else if (key == "out") {
      c.out = trim(value);
    } else if (key == "jobs") {
      c.jobs = static_cast<int>(parse_int(value, key));
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "timing") {
      c.timing = parse_bool(value, key);
    } else if (key == "mp_cap") {
      c.mp_cap = parse_int(value, key);
    } else {
      throw ParseError("unknown config key: " + key);
    }
  }
  c.validate();
  return c;
}

void SweepConfig::validate() const {
  for (i64 N : n_list) {
    if (N < 1) throw InvalidInput("level must be positive: " + std::to_string(N));
    if (!is_square_free(N)) throw InvalidInput("level not square-free: " + std::to_string(N));
    for (const auto& r : y_rules) {
      Rational y = r.eval(N);
      if (y * N < 1 || y > 1) throw InvalidInput("y rule " + r.to_string() + " leaves [1/N, 1] at N = " + std::to_string(N));
    }
  }
  if (delta <= 0) throw InvalidInput("sweep delta must be positive");
  if (jobs < 1) throw InvalidInput("jobs must be at least 1");
  if (!lam_rule.cube_root && lam_rule.value < 2) throw InvalidInput("Lam must be at least 2");
  if (mp_cap < 1) throw InvalidInput("mp_cap must be positive");
}

// ---------------------------------------------------------------------------
// Records

const char* const kRecordHeader = "N,y,lambda,delta,op,count,bound,ratio,elapsed_ms,oracle_checked";

std::string format_record(const SweepRecord& r) {
  std::string s = std::to_string(r.N);
  s += ',' + format_rational(r.y);
  s += ',' + std::to_string(r.lam);
  s += ',' + format_rational(r.delta);
  s += ',' + r.op;
  s += ',' + format_double(r.count);
  s += ',' + format_double(r.bound);
  s += ',' + format_double(r.ratio);
  s += ',' + format_double(r.elapsed_ms);
  s += r.oracle_checked ? ",1" : ",0";
  return s;
}

SweepRecord parse_record(std::string_view line) {
  std::vector<std::string> f;
  std::size_t pos = 0;
  for (;;) {
    std::size_t next = line.find(',', pos);
    f.emplace_back(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (f.size() != 10) throw ParseError("record has " + std::to_string(f.size()) + " fields, expected 10");
  SweepRecord r;
  r.N = parse_int(f[0], "N");
  r.y = parse_rational(f[1]);
  r.lam = parse_int(f[2], "lambda");
  r.delta = parse_rational(f[3]);
  r.op = f[4];
  r.count = parse_real(f[5]);
  r.bound = parse_real(f[6]);
  r.ratio = parse_real(f[7]);
  r.elapsed_ms = parse_real(f[8]);
  r.oracle_checked = parse_bool(f[9], "oracle_checked");
  return r;
}

void write_records(std::ostream& os, const std::vector<SweepRecord>& rows) {
  os << kRecordHeader << '\n';
  for (const auto& r : rows) os << format_record(r) << '\n';
}

std::vector<SweepRecord> read_records(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kRecordHeader) throw ParseError("missing record header");
  std::vector<SweepRecord> out;
  while (std::getline(is, line))
    if (!line.empty()) out.push_back(parse_record(line));
  return out;
}

// ---------------------------------------------------------------------------
// Sweep

UpperHalfPoint<Rational> sweep_point(i64 N, const Rational& y, std::uint64_t seed) {
  const i64 span = 16 * N;
  std::vector<i64> ks(static_cast<std::size_t>(span));
  std::iota(ks.begin(), ks.end(), 0);
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(N));
  // Fisher--Yates with our own index draw: std::shuffle's use of the engine
  // is implementation-defined.
  for (std::size_t i = ks.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(ks[i - 1], ks[j]);
  }
  for (i64 k : ks) {
    UpperHalfPoint<Rational> z(Rational(BigInt(k), BigInt(span)), y);
    if (check_admissible(z, N).admissible()) return z;
  }
  throw InvalidInput("no admissible point x = k/(16N) at height " + format_rational(y) + " for N = " + std::to_string(N));
}

SweepRecord run_cell(const SweepConfig& cfg, i64 N, const YRule& rule, const std::string& op) {
  const auto t0 = std::chrono::steady_clock::now();
  const Rational y = rule.eval(N);
  const i64 lam = cfg.lam_rule.eval(N);
  const auto z = sweep_point(N, y, cfg.seed);
  CountEngine eng(z, N, cfg.delta);
  SweepRecord r;
  r.N = N;
  r.y = y;
  r.lam = lam;
  r.delta = cfg.delta;
  r.op = op;
  BoundReport rep;
  if (op == "lem_ht") {
    rep = sum_generic(eng, 4 * lam * lam, GenericFilter::all);
  } else if (op == "lsquare") {
    rep = sum_generic(eng, 16 * lam * lam * lam * lam, GenericFilter::squares_only);
  } else if (op == "lem_new") {
    auto ps = primes_in(2, 2 * lam - 1);
    rep = sum_pell_family(eng, ps.back(), 2 * lam);
  } else if (op == "mu2") {
    rep = sum_upper(eng, 2 * lam, UpperShape::l1l2);
  } else if (op == "mu3") {
    rep = sum_upper(eng, 2 * lam, UpperShape::l1l2sq);
  } else if (op == "mu4") {
    rep = sum_upper(eng, 2 * lam, UpperShape::l1sql2sq);
  } else if (op == "mu_prime") {
    rep = sum_upper(eng, 2 * lam, UpperShape::single_prime);
  } else if (op == "mp") {
    auto lim = parabolic_range_limit(eng);
    i64 L = std::min(lim.value_or(cfg.mp_cap), cfg.mp_cap);
    if (L < 1) throw InvalidInput("parabolic range empty: 1/(4 delta y^2) <= 1");
    auto id = verify_parabolic_identity(eng, L);
    rep = make_report(id.sum_observed, static_cast<double>(id.sum_expected));
    rep.oracle_checked = true;
  } else if (op == "amplified") {
    const Rational l4 = Rational(BigInt(lam) * lam * lam * lam);
    if (!(l4 * cfg.delta * y * y < 1)) throw InvalidInput("amplifier hypothesis Lam^4 < 1/(delta y^2) fails");
    auto amp = amplified_sum(eng, lam);
    auto rhs = theoretical_rhs(static_cast<double>(lam), static_cast<double>(N), y.get_d());
    rep.count = 0;
    r.count = amp.total;
    r.bound = rhs[0] + rhs[1] + rhs[2];
    r.ratio = r.count / r.bound;
    r.elapsed_ms = cfg.timing ? elapsed_ms_since(t0) : 0.0;
    return r;
  } else {
    throw ParseError("unknown operation: " + op);
  }
  r.count = static_cast<double>(rep.count);
  r.bound = rep.bound;
  r.ratio = rep.ratio;
  r.oracle_checked = rep.oracle_checked;
  r.elapsed_ms = cfg.timing ? elapsed_ms_since(t0) : 0.0;
  return r;
}

std::optional<double> fit_slope(const std::vector<double>& lx, const std::vector<double>& ly) {
  const std::size_t n = lx.size();
  if (n < 2 || ly.size() != n) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0) return std::nullopt;
  return sxy / sxx;
}

namespace {

struct Cell {
  i64 N;
  const YRule* rule;
  std::string op;
};

struct CellOutcome {
  std::optional<SweepRecord> record;
  std::optional<std::string> skip_reason;
  std::optional<std::string> consistency;
};

} // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<Cell> cells;
  for (i64 N : cfg.n_list)
    for (const auto& rule : cfg.y_rules)
      for (const auto& op : cfg.operations) cells.push_back({N, &rule, op});

  std::vector<CellOutcome> outcomes(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& c = cells[i];
      try {
        outcomes[i].record = run_cell(cfg, c.N, *c.rule, c.op);
      } catch (const InvalidInput& e) {
        outcomes[i].skip_reason = e.what();
      } catch (const ConsistencyError& e) {
        outcomes[i].consistency = e.what();
      }
    }
  };
  const int width = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(cells.size())));
  if (width <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < width; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SweepResult res;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& o = outcomes[i];
    if (o.record) res.records.push_back(*o.record);
    if (o.skip_reason) res.skipped.push_back({cells[i].N, cells[i].rule->to_string(), cells[i].op, *o.skip_reason});
    if (o.consistency && !res.consistency_failure)
      res.consistency_failure = "N = " + std::to_string(cells[i].N) + ", " + cells[i].op + ": " + *o.consistency;
  }
  for (const auto& op : cfg.operations) {
    OpSummary s;
    s.op = op;
    std::vector<double> lx, ly;
    for (const auto& r : res.records) {
      if (r.op != op) continue;
      ++s.rows;
      s.max_ratio = std::max(s.max_ratio, r.ratio);
      if (r.ratio > 0) {
        lx.push_back(std::log(static_cast<double>(r.N)));
        ly.push_back(std::log(r.ratio));
      }
    }
    s.slope = fit_slope(lx, ly);
    res.summaries.push_back(s);
    if (op == "amplified") {
      for (const auto& r : res.records) {
        if (r.op != op) continue;
        double lam2 = static_cast<double>(r.lam) * static_cast<double>(r.lam);
        double c = (r.count / lam2) / std::pow(static_cast<double>(r.N), -1.0 / 3.0 + 0.1);
        res.amplified_constant = std::max(res.amplified_constant.value_or(0.0), c);
      }
    }
  }
  return res;
}

void write_summary(std::ostream& os, const SweepConfig& cfg, const SweepResult& res) {
  os << "rows " << res.records.size() << ", skipped " << res.skipped.size() << '\n';
  for (const auto& s : res.skipped)
    os << "skipped N=" << s.N << " y=" << s.y_rule << " op=" << s.op << ": " << s.reason << '\n';
  for (const auto& s : res.summaries)
    os << s.op << ": rows " << s.rows << ", max ratio " << format_double(s.max_ratio) << ", slope "
       << (s.slope ? format_double(*s.slope) : std::string("n/a")) << '\n';
  if (res.consistency_failure) os << "consistency failure: " << *res.consistency_failure << '\n';

  nlohmann::ordered_json j;
  j["seed"] = cfg.seed;
  j["delta"] = format_rational(cfg.delta);
  j["rows"] = res.records.size();
  auto& ops = j["operations"];
  ops = nlohmann::ordered_json::object();
  for (const auto& s : res.summaries) {
    nlohmann::ordered_json o;
    o["rows"] = s.rows;
    o["max_ratio"] = s.max_ratio;
    o["slope"] = s.slope ? nlohmann::ordered_json(*s.slope) : nlohmann::ordered_json(nullptr);
    ops[s.op] = o;
  }
  j["amplified_constant"] = res.amplified_constant ? nlohmann::ordered_json(*res.amplified_constant) : nlohmann::ordered_json(nullptr);
  auto& sk = j["skipped"];
  sk = nlohmann::ordered_json::array();
  for (const auto& s : res.skipped) sk.push_back({{"N", s.N}, {"y_rule", s.y_rule}, {"op", s.op}, {"reason", s.reason}});
  j["consistency_failure"] = res.consistency_failure ? nlohmann::ordered_json(*res.consistency_failure) : nlohmann::ordered_json(nullptr);
  os << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Commands

int exit_status_for(const std::exception& e) {
  if (dynamic_cast<const ConsistencyError*>(&e)) return 3;
  if (dynamic_cast<const InvalidInput*>(&e)) return 2;
  return 1;
}

namespace {

i64 level_of(const KeyValues& kv) {
  i64 N = parse_int(need(kv, "N"), "N");
  if (N < 1) throw InvalidInput("level must be positive");
  if (!is_square_free(N)) throw InvalidInput("level not square-free: " + std::to_string(N));
  return N;
}

std::string format_matrix(const IntMatrix2& m) {
  return "[" + m.a.get_str() + " " + m.b.get_str() + "; " + m.c.get_str() + " " + m.d.get_str() + "]";
}

} // namespace

int cmd_count(const KeyValues& kv, const CommandOptions& opt, std::ostream& out) {
  const auto z = parse_point(need(kv, "z"));
  const i64 N = level_of(kv);
  const i64 l = parse_int(need(kv, "l"), "l");
  const Rational delta = parse_rational(need(kv, "delta"));
  CountQuery q{z, l, N, delta};
  auto b = enumerate(q, opt.verbose);
  out << "z=" << format_point(z) << " l=" << l << " N=" << N << " delta=" << format_rational(delta) << '\n';
  out << "generic=" << b.generic << '\n';
  out << "upper=" << b.upper_triangular << '\n';
  out << "parabolic=" << b.parabolic << '\n';
  out << "total=" << b.total() << '\n';
  if (opt.verbose) {
    std::sort(b.matrices.begin(), b.matrices.end(), [](const ClassifiedMatrix& x, const ClassifiedMatrix& y) {
      return std::tie(x.matrix.c, x.matrix.a, x.matrix.b, x.matrix.d) < std::tie(y.matrix.c, y.matrix.a, y.matrix.b, y.matrix.d);
    });
    for (const auto& m : b.matrices) out << format_matrix(m.matrix) << ' ' << to_string(m.cls) << '\n';
  }
  return 0;
}

int cmd_sweep(const KeyValues& kv, const CommandOptions& opt, std::ostream& out) {
  KeyValues merged = kv;
  if (opt.jobs) merged["jobs"] = std::to_string(*opt.jobs);
  if (opt.seed) merged["seed"] = std::to_string(*opt.seed);
  if (opt.out) merged["out"] = *opt.out;
  SweepConfig cfg = SweepConfig::from_key_values(merged);
  if (cfg.out.empty()) throw ParseError("sweep needs an output path (out = ... or --out)");
  std::ofstream csv(cfg.out);
  std::ofstream summary(cfg.out + ".summary");
  if (!csv || !summary) throw InvalidInput("cannot write output path: " + cfg.out);
  auto res = run_sweep(cfg);
  write_records(csv, res.records);
  write_summary(summary, cfg, res);
  if (!csv || !summary) throw InvalidInput("write failed: " + cfg.out);
  out << "wrote " << res.records.size() << " rows to " << cfg.out << " (" << res.skipped.size() << " skipped)\n";
  for (const auto& s : res.summaries)
    out << s.op << ": max ratio " << format_double(s.max_ratio) << ", slope "
        << (s.slope ? format_double(*s.slope) : std::string("n/a")) << '\n';
  if (opt.verbose)
    for (const auto& s : res.skipped) out << "skipped N=" << s.N << " " << s.op << ": " << s.reason << '\n';
  if (res.consistency_failure) throw ConsistencyError(*res.consistency_failure);
  return 0;
}

int cmd_pell(const KeyValues& kv, const CommandOptions& opt, std::ostream& out) {
  BigInt d(trim(need(kv, "D")));
  BigInt m(trim(need(kv, "m")));
  BigInt xmax(trim(need(kv, "xmax")));
  PellInstance inst(d, m, xmax);
  auto set = solve_in_box(inst);
  out << "unit=" << set.fundamental_unit.x.get_str() << "+" << set.fundamental_unit.y.get_str() << "*sqrt(" << d.get_str() << ")\n";
  out << "solutions=" << set.solutions.size() << '\n';
  if (opt.verbose || set.solutions.size() <= 64)
    for (const auto& s : set.solutions) out << s.x.get_str() << ' ' << s.y.get_str() << '\n';
  return 0;
}

int cmd_reduce(const KeyValues& kv, const CommandOptions& opt, std::ostream& out) {
  (void)opt;
  const auto z = parse_point(need(kv, "z"));
  auto red = reduce(z);
  out << "basis=(" << red.basis[0].a << "," << red.basis[0].b << ") (" << red.basis[1].a << "," << red.basis[1].b << ")\n";
  out << "norm_sq=" << format_rational(red.norm_sq[0]) << " " << format_rational(red.norm_sq[1]) << '\n';
  out << "lambda1=" << format_double(red.lambda1) << " lambda2=" << format_double(red.lambda2) << '\n';
  if (auto n = maybe(kv, "N")) {
    i64 N = parse_int(*n, "N");
    if (N < 1) throw InvalidInput("level must be positive");
    auto rep = check_admissible(z, N);
    out << "admissible=" << (rep.admissible() ? "yes" : "no") << " shortest=" << format_rational(rep.shortest_value)
        << " witness=(" << rep.witness.first << "," << rep.witness.second << ")\n";
  }
  return 0;
}

int cmd_amplify(const KeyValues& kv, const CommandOptions& opt, std::ostream& out) {
  const auto z = parse_point(need(kv, "z"));
  const i64 N = level_of(kv);
  const Rational delta = parse_rational(need(kv, "delta"));
  i64 lam = maybe(kv, "Lam") ? parse_int(*maybe(kv, "Lam"), "Lam") : LamRule{}.eval(N);
  CountEngine eng(z, N, delta);
  auto amp = amplified_sum(eng, lam);
  out << "Lam=" << lam << " total=" << format_double(amp.total)
      << " parabolic_hypothesis=" << (amp.parabolic_hypothesis ? "yes" : "no") << '\n';
  for (const auto& b : amp.blocks)
    out << to_string(b.cls) << ' ' << to_string(b.range) << " contribution=" << format_double(b.contribution)
        << " bound=" << format_double(b.bound) << " ratio=" << format_double(b.ratio) << " matrices=" << b.matrices << '\n';
  auto rhs = theoretical_rhs(static_cast<double>(lam), static_cast<double>(N), z.y.get_d());
  out << "rhs=" << format_double(rhs[0]) << " " << format_double(rhs[1]) << " " << format_double(rhs[2]) << '\n';
  if (opt.verbose)
    for (const auto& [l, b] : amp.terms)
      out << "l=" << l << " generic=" << b.generic << " upper=" << b.upper_triangular << " parabolic=" << b.parabolic << '\n';
  return 0;
}

int cmd_exponent(const KeyValues& kv, const CommandOptions& opt, std::ostream& out) {
  auto t = maybe(kv, "terms");
  ExponentProblem p = t ? parse_terms(*t) : ExponentProblem::default_triple();
  auto sol = optimize_exponent(p);
  if (opt.verbose)
    for (const auto& term : p.terms) out << "term " << format_affine(term) << '\n';
  out << "alpha=" << format_rational(sol.alpha) << " exponent=" << format_rational(sol.value) << '\n';
  return 0;
}

} // namespace supnorm
