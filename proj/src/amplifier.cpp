#include "supnorm/amplifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace supnorm {

const char* to_string(AmpRange r) {
  switch (r) {
  case AmpRange::one: return "l=1";
  case AmpRange::prime: return "(L,2L)";
  case AmpRange::prime2: return "(L^2,4L^2)";
  case AmpRange::prime3: return "(L^3,8L^3)";
  case AmpRange::prime4: return "l>L^4";
  case AmpRange::all: return "all";
  }
  return "?";
}

i64 AmplifierWeights::weight(i64 l) const {
  auto it = weights.find(l);
  return it == weights.end() ? 0 : it->second;
}

AmplifierWeights build_weights(i64 lam) {
  if (lam < 2) throw InvalidInput("amplifier length must be at least 2");
  AmplifierWeights w;
  w.lam = lam;
  w.primes = primes_in(lam + 1, 2 * lam - 1);
  w.weights[1] = lam;
  w.range_of[1] = AmpRange::one;
  auto put = [&](i64 l, AmpRange r) {
    w.weights[l] = 1;
    w.range_of[l] = r;
  };
  for (i64 p : w.primes) {
    put(p, AmpRange::prime);
    for (i64 q : w.primes) {
      put(p * q, AmpRange::prime2);
      put(p * q * q, AmpRange::prime3);
      put(p * p * q * q, AmpRange::prime4);
    }
  }
  return w;
}

double ledger_bound(MatrixClass cls, AmpRange range, double N, double y, double lam) {
  const double sn = std::sqrt(N);
  if (cls == MatrixClass::parabolic) return lam;
  if (cls == MatrixClass::upper_triangular) {
    switch (range) {
    case AmpRange::one: return lam * (1 + sn * y + y);
    case AmpRange::prime: return 1 / std::sqrt(lam) + sn * y + std::sqrt(lam) * y;
    case AmpRange::prime2: return 1 + lam * sn * y + lam * lam * y;
    case AmpRange::prime3: return lam * sn * y + std::pow(lam, 2.5) * y;
    case AmpRange::prime4: return sn * y + lam * lam * y;
    case AmpRange::all: break;
    }
    return 0;
  }
  const double ny = N * y;
  switch (range) {
  case AmpRange::one: return lam * (1 / ny + 1 / sn);
  case AmpRange::prime: return std::sqrt(lam) / ny + lam / sn + std::pow(lam, 1.5) / N;
  case AmpRange::prime2: return lam / ny + lam * lam / sn + std::pow(lam, 3.0) / N;
  case AmpRange::prime3: return lam / ny + std::pow(lam, 2.5) / sn + std::pow(lam, 4.0) / N;
  case AmpRange::prime4: return 1 / ny + lam * lam / sn + std::pow(lam, 4.0) / N;
  case AmpRange::all: break;
  }
  return 0;
}

AmplifiedSum amplified_sum(const CountEngine& eng, i64 lam) {
  const AmplifierWeights w = build_weights(lam);
  AmplifiedSum out;
  out.lam = lam;
  const double N = static_cast<double>(eng.level()), y = eng.y(), L = static_cast<double>(lam);
  {
    const Rational l4 = Rational(BigInt(lam) * lam * lam * lam);
    out.parabolic_hypothesis = eng.delta() == 0 || 4 * eng.delta() * eng.z().y * eng.z().y * l4 < 1;
  }

  // Generic counts at perfect squares come from one profile pass.
  i64 t_top = 0;
  for (const auto& [l, _] : w.weights)
    if (is_perfect_square(l)) t_top = std::max(t_top, isqrt(l));
  const auto profile = eng.generic_square_profile(t_top);

  const AmpRange ranges[] = {AmpRange::one, AmpRange::prime, AmpRange::prime2, AmpRange::prime3, AmpRange::prime4};
  LedgerBlock para{MatrixClass::parabolic, AmpRange::all};
  std::map<AmpRange, LedgerBlock> upper, gen;
  for (AmpRange r : ranges) {
    upper[r] = {MatrixClass::upper_triangular, r};
    gen[r] = {MatrixClass::generic, r};
  }
  long double total = 0, para_sum = 0;
  std::map<AmpRange, long double> up_sum, gen_sum;
  for (const auto& [l, yl] : w.weights) {
    CountBreakdown b{CountQuery{eng.z(), l, eng.level(), eng.delta()}, 0, 0, 0, {}};
    b.generic = is_perfect_square(l) ? profile[static_cast<std::size_t>(isqrt(l))] : eng.generic(l);
    b.upper_triangular = eng.upper(l);
    b.parabolic = eng.parabolic(l);
    const long double wt = static_cast<long double>(yl) / std::sqrt(static_cast<long double>(l));
    const AmpRange r = w.range_of.at(l);
    para_sum += wt * b.parabolic;
    up_sum[r] += wt * b.upper_triangular;
    gen_sum[r] += wt * b.generic;
    total += wt * b.total();
    para.matrices += b.parabolic;
    upper[r].matrices += b.upper_triangular;
    gen[r].matrices += b.generic;
    out.terms.emplace(l, std::move(b));
  }
  auto finish = [&](LedgerBlock& blk, long double v) {
    blk.contribution = static_cast<double>(v);
    blk.bound = ledger_bound(blk.cls, blk.range, N, y, L);
    blk.ratio = blk.bound > 0 ? blk.contribution / blk.bound : 0.0;
    out.blocks.push_back(blk);
  };
  finish(para, para_sum);
  for (AmpRange r : ranges) finish(upper[r], up_sum[r]);
  for (AmpRange r : ranges) finish(gen[r], gen_sum[r]);
  out.total = static_cast<double>(total);
  return out;
}

std::array<double, 3> theoretical_rhs(double lam, double N, double y) {
  (void)y;
  return {lam, std::pow(lam, 2.5) / std::sqrt(N), std::pow(lam, 4.0) / N};
}

// ---------------------------------------------------------------------------
// Exponent optimization

Rational ExponentProblem::objective(const Rational& alpha) const {
  if (terms.empty()) throw InvalidInput("exponent problem has no terms");
  Rational best = terms.front().at(alpha);
  for (const auto& t : terms) best = std::max(best, t.at(alpha));
  return (best - 2 * alpha) / 2;
}

ExponentProblem ExponentProblem::default_triple() {
  return {{{Rational(1), Rational(0)}, {Rational(5, 2), Rational(-1, 2)}, {Rational(4), Rational(-1)}}};
}

ExponentSolution optimize_exponent(const ExponentProblem& p) {
  if (p.terms.empty()) throw InvalidInput("exponent problem has no terms");
  std::set<Rational> candidates{Rational(0), Rational(1)};
  for (std::size_t i = 0; i < p.terms.size(); ++i)
    for (std::size_t j = i + 1; j < p.terms.size(); ++j) {
      const auto& a = p.terms[i];
      const auto& b = p.terms[j];
      if (a.slope == b.slope) continue;
      Rational x = (b.intercept - a.intercept) / (a.slope - b.slope);
      if (x >= 0 && x <= 1) candidates.insert(x);
    }
  ExponentSolution best{*candidates.begin(), p.objective(*candidates.begin())};
  for (const auto& x : candidates) {
    Rational v = p.objective(x);
    if (v < best.value) best = {x, v};
  }
  return best;
}

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

Rational parse_coefficient(const std::string& s, std::string_view whole) {
  try {
    return parse_rational(s);
  } catch (const ParseError&) {
    throw ParseError("malformed term: '" + std::string(whole) + "'");
  }
}

} // namespace

AffineTerm parse_affine(std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) throw ParseError("empty exponent term");
  AffineTerm out{Rational(0), Rational(0)};
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    const std::string tok = s.substr(pos, end - pos);
    if (tok.empty()) throw ParseError("malformed term: '" + std::string(text) + "'");
    const auto at = tok.find('a');
    if (at == std::string::npos) {
      out.intercept += sign * parse_coefficient(tok, text);
    } else {
      if (tok.find('a', at + 1) != std::string::npos) throw ParseError("malformed term: '" + std::string(text) + "'");
      std::string pre = tok.substr(0, at), post = tok.substr(at + 1);
      if (!pre.empty() && pre.back() == '*') pre.pop_back();
      Rational coef = pre.empty() ? Rational(1) : parse_coefficient(pre, text);
      if (!post.empty()) {
        if (post[0] != '/' || post.size() < 2) throw ParseError("malformed term: '" + std::string(text) + "'");
        Rational den = parse_coefficient(post.substr(1), text);
        if (den == 0) throw ParseError("division by zero in term: '" + std::string(text) + "'");
        coef /= den;
      }
      out.slope += sign * coef;
    }
    pos = end;
  }
  return out;
}

ExponentProblem parse_terms(std::string_view text) {
  ExponentProblem p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    p.terms.push_back(parse_affine(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return p;
}

std::string format_affine(const AffineTerm& t) {
  std::string out;
  if (t.slope != 0) out = (t.slope == 1 ? std::string() : format_rational(t.slope) + "*") + "a";
  if (t.intercept != 0 || out.empty()) {
    if (!out.empty() && t.intercept > 0) out += "+";
    out += format_rational(t.intercept);
  }
  return out;
}

} // namespace supnorm
