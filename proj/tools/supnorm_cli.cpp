// supnorm: counting matrices near the diagonal, Pell boxes, lattice reduction,
// the amplified sum and the exponent optimizer from the command line.
//
//   supnorm count z=0+1/1i l=1 N=1 delta=0
//   supnorm sweep --config configs/default_sweep.cfg --out sweep.csv --jobs 4
//   supnorm pell D=8 m=1 xmax=1000
//   supnorm reduce z=1/3+1/7i N=7
//   supnorm amplify z=1/5i N=11 delta=4 Lam=2
//   supnorm exponent terms=a,5a/2-1/2,4a-1

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "supnorm/harness.hpp"

using namespace supnorm;

namespace {

KeyValues gather(const std::string& config, const std::vector<std::string>& args) {
  KeyValues kv;
  if (!config.empty()) kv = read_key_values(config);
  for (const auto& a : args) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got '" + a + "'");
    kv[a.substr(0, eq)] = a.substr(eq + 1);
  }
  return kv;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"supnorm: matrix counts, Pell equations and the amplifier"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  int jobs = 0;
  long long seed = -1;
  bool verbose = false;
  std::vector<std::string> args;

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const KeyValues&, const CommandOptions&, std::ostream&);
  };
  const Sub subs[] = {
      {"count", "count matrices: z=<x+yi> l=<int> N=<int> delta=<rational>", cmd_count},
      {"sweep", "run a sweep from a config file, write CSV and summary", cmd_sweep},
      {"pell", "solve X^2 - D Y^2 = m in |X| <= xmax: D= m= xmax=", cmd_pell},
      {"reduce", "reduce the lattice <1, z>: z= [N=]", cmd_reduce},
      {"amplify", "amplified count sum with block ledger: z= N= delta= [Lam=]", cmd_amplify},
      {"exponent", "optimize the exponent: [terms=<affine,...>]", cmd_exponent},
  };
  std::vector<std::pair<CLI::App*, const Sub*>> registered;
  for (const auto& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.help);
    sc->add_option("--config", config, "key = value file; key=value arguments override it");
    sc->add_option("--out", out, "output path");
    sc->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sc->add_option("--seed", seed, "seed for point selection")->check(CLI::NonNegativeNumber);
    sc->add_flag("--verbose,-v", verbose, "print matrices and details");
    sc->add_option("args", args, "key=value parameters");
    registered.emplace_back(sc, &s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    CommandOptions opt;
    opt.verbose = verbose;
    if (jobs > 0) opt.jobs = jobs;
    if (seed >= 0) opt.seed = static_cast<std::uint64_t>(seed);
    if (!out.empty()) opt.out = out;
    for (const auto& [sc, s] : registered) {
      if (!sc->parsed()) continue;
      KeyValues kv = gather(config, args);
      if (std::string(s->name) == "sweep" || out.empty()) return s->fn(kv, opt, std::cout);
      std::ofstream file(out);
      if (!file) throw InvalidInput("cannot write output path: " + out);
      return s->fn(kv, opt, file);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_status_for(e);
  }
  return 1;
}
