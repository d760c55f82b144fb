// hua: spectrum tables, analytic-vs-oracle comparison, approximation scans
// and NU derivation traces for the Hua potential.
//
// Exit codes: 0 success, 1 configuration error, 2 per-row failures (the
// report is still written).

#include "hua/error.hpp"
#include "hua/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace hua;
using harness::Command;
using harness::RunConfig;

struct Flags {
  std::string config;
  double v1 = 0, alpha = 0, q = 0, mu = 0, hbar = 0, c0 = 0, r_max_factor = 0;
  int l_max = 0, n_max = 0, grid_points = 0, refinement_levels = 0, threads = 1;
  std::vector<std::string> variants, schemes, domains;
  std::string format, out;
  double r_min = 0, r_max = 0, epsilon = 0, beta = 0;
  int samples = 0;
};

struct Registered {
  CLI::App* app;
  Command cmd;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file (flags override its fields)");
  sub->add_option("--v1", f.v1, "potential depth V1");
  sub->add_option("--alpha", f.alpha, "range parameter alpha");
  sub->add_option("--q", f.q, "deformation q (q < 1, q != 0)");
  sub->add_option("--mu", f.mu, "reduced mass");
  sub->add_option("--hbar", f.hbar, "reduced Planck constant");
  sub->add_option("--l-max", f.l_max, "largest orbital quantum number");
  sub->add_option("--n-max", f.n_max, "largest radial quantum number");
  sub->add_option("--variant", f.variants, "GA_AsPrinted | GA_Rederived | Pekeris_AsPrinted | Pekeris_Rederived");
  sub->add_option("--scheme", f.schemes, "ExactCentrifugal | GreeneAldrichDeformed | PekerisImproved");
  sub->add_option("--domain", f.domains, "Physical | Extended");
  sub->add_option("--c0", f.c0, "Pekeris constant C0");
  sub->add_option("--grid-points", f.grid_points, "interior points of the coarsest oracle grid");
  sub->add_option("--r-max-factor", f.r_max_factor, "oracle right end in units of 1/alpha");
  sub->add_option("--refinement-levels", f.refinement_levels, "grid doublings for Richardson extrapolation");
  sub->add_option("--format", f.format, "csv | json | text");
  sub->add_option("--out", f.out, "output path (default: stdout)");
  sub->add_option("--threads", f.threads, "worker threads for independent oracle runs");
}

bool given(const CLI::App* sub, const char* name) {
  const CLI::Option* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

RunConfig build_config(const CLI::App* sub, const Flags& f) {
  RunConfig cfg;
  if (given(sub, "--config")) {
    std::ifstream in(f.config);
    if (!in)
      throw Error(Errc::ConfigError, "cannot read config '" + f.config + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    cfg = harness::config_from_json(ss.str());
  }
  if (given(sub, "--v1")) cfg.params.V1 = f.v1;
  if (given(sub, "--alpha")) cfg.params.alpha = f.alpha;
  if (given(sub, "--q")) cfg.params.q = f.q;
  if (given(sub, "--mu")) cfg.constants.mu = f.mu;
  if (given(sub, "--hbar")) cfg.constants.hbar = f.hbar;
  if (given(sub, "--l-max")) cfg.l_max = f.l_max;
  if (given(sub, "--n-max")) cfg.n_max = f.n_max;
  if (given(sub, "--c0")) cfg.c0 = f.c0;
  if (given(sub, "--grid-points")) cfg.grid.n_points = f.grid_points;
  if (given(sub, "--r-max-factor")) cfg.grid.r_max_factor = f.r_max_factor;
  if (given(sub, "--refinement-levels")) cfg.grid.refinement_levels = f.refinement_levels;
  if (given(sub, "--format")) cfg.format = f.format;
  if (given(sub, "--out")) cfg.out = f.out;
  if (given(sub, "--threads")) cfg.threads = f.threads;
  if (given(sub, "--variant")) {
    cfg.variants.clear();
    for (const auto& name : f.variants) {
      auto v = analytic::parse_variant(name);
      if (!v)
        throw Error(Errc::ConfigError, "unknown variant '" + name + "'");
      cfg.variants.push_back(*v);
    }
  }
  if (given(sub, "--scheme")) {
    cfg.schemes.clear();
    for (const auto& name : f.schemes) {
      auto s = harness::parse_scheme(name, cfg.c0);
      if (!s)
        throw Error(Errc::ConfigError, "unknown scheme '" + name + "'");
      cfg.schemes.push_back(*s);
    }
  }
  if (given(sub, "--domain")) {
    cfg.domains.clear();
    for (const auto& name : f.domains) {
      auto d = harness::parse_domain(name);
      if (!d)
        throw Error(Errc::ConfigError, "unknown domain '" + name + "'");
      cfg.domains.push_back(*d);
    }
  }
  if (given(sub, "--r-min")) cfg.scan.r_min = f.r_min;
  if (given(sub, "--r-max")) cfg.scan.r_max = f.r_max;
  if (given(sub, "--samples")) cfg.scan.samples = f.samples;
  if (given(sub, "--epsilon")) cfg.probe_epsilon = f.epsilon;
  if (given(sub, "--beta")) cfg.beta = f.beta;
  return cfg;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hua potential bound states: closed forms, NU derivation and numerical oracle"};
  app.require_subcommand(1);
  Flags flags;

  std::vector<Registered> subs;
  subs.push_back({app.add_subcommand("spectrum", "closed-form energy levels per variant"), Command::Spectrum});
  subs.push_back({app.add_subcommand("compare", "closed forms against the finite-difference oracle"), Command::Compare});
  subs.push_back({app.add_subcommand("approx-scan", "accuracy of the 1/r^2 approximations"), Command::ApproxScan});
  subs.push_back({app.add_subcommand("nu-derive", "numeric NU derivation trace"), Command::NuDerive});
  for (auto& s : subs)
    add_common(s.app, flags);
  subs[2].app->add_option("--r-min", flags.r_min, "smallest radius");
  subs[2].app->add_option("--r-max", flags.r_max, "largest radius");
  subs[2].app->add_option("--samples", flags.samples, "number of log-spaced radii");
  subs[3].app->add_option("--epsilon", flags.epsilon, "probe dimensionless energy");
  subs[3].app->add_option("--beta", flags.beta, "override the dimensionless depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  for (const auto& s : subs) {
    if (!s.app->parsed())
      continue;
    try {
      const RunConfig cfg = build_config(s.app, flags);
      harness::Report report;
      switch (s.cmd) {
      case Command::Spectrum: report = harness::run_spectrum(cfg); break;
      case Command::Compare: report = harness::run_compare(cfg); break;
      case Command::ApproxScan: report = harness::run_approx_scan(cfg); break;
      case Command::NuDerive: report = harness::run_nu_derive(cfg); break;
      }
      if (cfg.out.empty())
        std::cout << harness::render(report, cfg.format);
      else
        harness::emit(report, cfg.format, cfg.out);
      return report.failed_rows > 0 ? 2 : 0;
    } catch (const Error& e) {
      std::cerr << "hua: " << e.what() << '\n';
      return e.code() == Errc::ConfigError ? 1 : 2;
    }
  }
  return 1;
}
