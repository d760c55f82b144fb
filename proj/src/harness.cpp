#include "hua/harness.hpp"

#include "hua/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <thread>
#include <tuple>

namespace hua::harness {

namespace {

using analytic::SpectrumVariant;
using oracle::RadialDomain;
using json = nlohmann::json;

void config_error(const std::string& what) { throw Error(Errc::ConfigError, what); }

int variant_rank(SpectrumVariant v) { return static_cast<int>(v); }

int scheme_rank(const ApproxScheme& s) { return static_cast<int>(s.index()); }

std::vector<SpectrumVariant> sorted_variants(const RunConfig& cfg) {
  std::set<int> ranks;
  for (SpectrumVariant v : cfg.variants)
    ranks.insert(variant_rank(v));
  std::vector<SpectrumVariant> out;
  for (int r : ranks)
    out.push_back(static_cast<SpectrumVariant>(r));
  return out;
}

std::vector<ApproxScheme> sorted_schemes(const std::vector<ApproxScheme>& schemes, double c0) {
  std::set<int> ranks;
  for (const ApproxScheme& s : schemes)
    ranks.insert(scheme_rank(s));
  std::vector<ApproxScheme> out;
  for (int r : ranks) {
    if (r == 0)
      out.emplace_back(ExactCentrifugal{});
    else if (r == 1)
      out.emplace_back(GreeneAldrichDeformed{});
    else
      out.emplace_back(PekerisImproved{c0});
  }
  return out;
}

std::vector<RadialDomain> effective_domains(const RunConfig& cfg) {
  if (!cfg.domains.empty()) {
    std::set<int> ranks;
    for (RadialDomain d : cfg.domains)
      ranks.insert(static_cast<int>(d));
    std::vector<RadialDomain> out;
    for (int r : ranks)
      out.push_back(static_cast<RadialDomain>(r));
    return out;
  }
  if (cfg.params.q > 0.0 && cfg.params.q < 1.0)
    return {RadialDomain::Physical, RadialDomain::Extended};
  return {RadialDomain::Physical};
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. Each result is
// written to its own slot, so output is independent of scheduling.
template <class Fn> void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++)
        fn(i);
    });
  for (auto& t : pool)
    t.join();
}

Cell opt_cell(const std::optional<double>& v) {
  if (v)
    return *v;
  return std::monostate{};
}

template <class T> T get_required(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(std::string("field '") + key + "': " + e.what());
  }
  return T{};
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object())
    config_error(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end())
      config_error("unknown field '" + key + "' in " + where);
  }
}

struct OracleKey {
  int l;
  int scheme; // ApproxScheme index
  RadialDomain domain;
  auto operator<=>(const OracleKey&) const = default;
};

struct OracleOutcome {
  oracle::SpectrumResult result;
  std::string error;
};

ApproxScheme scheme_from_rank(int rank, double c0) {
  if (rank == 0)
    return ExactCentrifugal{};
  if (rank == 1)
    return GreeneAldrichDeformed{};
  return PekerisImproved{c0};
}

} // namespace

std::optional<ApproxScheme> parse_scheme(std::string_view name, double c0) noexcept {
  if (name == "ExactCentrifugal")
    return ExactCentrifugal{};
  if (name == "GreeneAldrichDeformed")
    return GreeneAldrichDeformed{};
  if (name == "PekerisImproved")
    return PekerisImproved{c0};
  return std::nullopt;
}

std::optional<RadialDomain> parse_domain(std::string_view name) noexcept {
  if (name == "Physical")
    return RadialDomain::Physical;
  if (name == "Extended")
    return RadialDomain::Extended;
  return std::nullopt;
}

void validate_config(const RunConfig& cfg, Command cmd) {
  try {
    if (cmd == Command::NuDerive && cfg.beta) {
      if (!(cfg.params.q < 1.0) || cfg.params.q == 0.0)
        throw Error(Errc::DeformationOutOfRange, "q must satisfy q < 1 and q != 0");
    } else {
      validate_params(cfg.params, cfg.constants);
    }
  } catch (const Error& e) {
    config_error(e.what());
  }
  if (cfg.l_max < 0 || cfg.n_max < 0)
    config_error("l_max and n_max must be >= 0");
  if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "text")
    config_error("format must be csv, json or text");
  if (!(cfg.c0 >= 0.0))
    config_error("c0 must be >= 0");
  if (cfg.threads < 1)
    config_error("threads must be >= 1");

  switch (cmd) {
  case Command::Spectrum:
    if (cfg.variants.empty())
      config_error("no spectrum variant selected");
    break;
  case Command::Compare:
    if (cfg.variants.empty())
      config_error("no spectrum variant selected");
    if (cfg.grid.n_points < 100 || cfg.grid.refinement_levels < 1 || !(cfg.grid.r_max_factor > 0.0))
      config_error("grid needs n_points >= 100, refinement_levels >= 1, r_max_factor > 0");
    for (RadialDomain d : cfg.domains)
      if (d == RadialDomain::Extended && !(cfg.params.q > 0.0 && cfg.params.q < 1.0))
        config_error("the Extended domain requires 0 < q < 1");
    break;
  case Command::ApproxScan:
    if (cfg.schemes.empty())
      config_error("no approximation scheme selected");
    if (cfg.scan.samples < 2)
      config_error("scan needs samples >= 2");
    break;
  case Command::NuDerive: {
    const bool any = std::any_of(cfg.schemes.begin(), cfg.schemes.end(),
                                 [](const ApproxScheme& s) { return !std::holds_alternative<ExactCentrifugal>(s); });
    if (!any && cfg.variants.empty())
      config_error("nu-derive needs an approximated scheme or a variant");
    break;
  }
  }
}

RunConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  check_keys(j,
             {"params", "constants", "l_max", "n_max", "variants", "schemes", "domains", "grid", "c0", "output",
              "scan", "probe_epsilon", "beta", "threads"},
             "config");

  RunConfig cfg;
  if (j.contains("params")) {
    const json& p = j["params"];
    check_keys(p, {"V1", "alpha", "q"}, "params");
    if (p.contains("V1")) cfg.params.V1 = get_required<double>(p, "V1");
    if (p.contains("alpha")) cfg.params.alpha = get_required<double>(p, "alpha");
    if (p.contains("q")) cfg.params.q = get_required<double>(p, "q");
  }
  if (j.contains("constants")) {
    const json& c = j["constants"];
    check_keys(c, {"mu", "hbar"}, "constants");
    if (c.contains("mu")) cfg.constants.mu = get_required<double>(c, "mu");
    if (c.contains("hbar")) cfg.constants.hbar = get_required<double>(c, "hbar");
  }
  if (j.contains("l_max")) cfg.l_max = get_required<int>(j, "l_max");
  if (j.contains("n_max")) cfg.n_max = get_required<int>(j, "n_max");
  if (j.contains("c0")) cfg.c0 = get_required<double>(j, "c0");
  if (j.contains("threads")) cfg.threads = get_required<int>(j, "threads");
  if (j.contains("probe_epsilon")) cfg.probe_epsilon = get_required<double>(j, "probe_epsilon");
  if (j.contains("beta")) cfg.beta = get_required<double>(j, "beta");

  if (j.contains("variants"))
    for (const auto& name : get_required<std::vector<std::string>>(j, "variants")) {
      auto v = analytic::parse_variant(name);
      if (!v)
        config_error("unknown variant '" + name + "'");
      cfg.variants.push_back(*v);
    }
  if (j.contains("schemes"))
    for (const auto& name : get_required<std::vector<std::string>>(j, "schemes")) {
      auto s = parse_scheme(name, cfg.c0);
      if (!s)
        config_error("unknown scheme '" + name + "'");
      cfg.schemes.push_back(*s);
    }
  if (j.contains("domains"))
    for (const auto& name : get_required<std::vector<std::string>>(j, "domains")) {
      auto d = parse_domain(name);
      if (!d)
        config_error("unknown domain '" + name + "'");
      cfg.domains.push_back(*d);
    }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    check_keys(g, {"n_points", "r_max_factor", "refinement_levels"}, "grid");
    if (g.contains("n_points")) cfg.grid.n_points = get_required<int>(g, "n_points");
    if (g.contains("r_max_factor")) cfg.grid.r_max_factor = get_required<double>(g, "r_max_factor");
    if (g.contains("refinement_levels")) cfg.grid.refinement_levels = get_required<int>(g, "refinement_levels");
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, {"format", "path"}, "output");
    if (o.contains("format")) cfg.format = get_required<std::string>(o, "format");
    if (o.contains("path")) cfg.out = get_required<std::string>(o, "path");
  }
  if (j.contains("scan")) {
    const json& s = j["scan"];
    check_keys(s, {"r_min", "r_max", "samples"}, "scan");
    if (s.contains("r_min")) cfg.scan.r_min = get_required<double>(s, "r_min");
    if (s.contains("r_max")) cfg.scan.r_max = get_required<double>(s, "r_max");
    if (s.contains("samples")) cfg.scan.samples = get_required<int>(s, "samples");
  }
  return cfg;
}

Report run_spectrum(const RunConfig& cfg) {
  validate_config(cfg, Command::Spectrum);
  Report report{{"variant", "l", "n", "E", "epsilon", "zeta", "status", "reason"}, {}, 0};
  for (SpectrumVariant v : sorted_variants(cfg)) {
    for (int l = 0; l <= cfg.l_max; ++l) {
      for (int n = 0; n <= cfg.n_max; ++n) {
        const std::string name(analytic::variant_name(v));
        try {
          const analytic::EnergyLevel lv = analytic::energy_level(cfg.params, cfg.constants, n, l, v, cfg.c0);
          report.rows.push_back({name, (long long)l, (long long)n, lv.E, lv.epsilon, lv.zeta, "ok", ""});
        } catch (const Error& e) {
          if (e.code() == Errc::NoBoundState)
            break; // higher n cannot bind either
          report.rows.push_back({name, (long long)l, (long long)n, std::monostate{}, std::monostate{},
                                 std::monostate{}, "error", e.what()});
          ++report.failed_rows;
          break;
        }
      }
    }
  }
  return report;
}

Report run_compare(const RunConfig& cfg) {
  validate_config(cfg, Command::Compare);
  const auto variants = sorted_variants(cfg);
  const auto domains = effective_domains(cfg);
  const bool want_physical = std::find(domains.begin(), domains.end(), RadialDomain::Physical) != domains.end();
  const bool want_extended = std::find(domains.begin(), domains.end(), RadialDomain::Extended) != domains.end();

  std::set<OracleKey> keys;
  for (int l = 0; l <= cfg.l_max; ++l) {
    for (SpectrumVariant v : variants) {
      const int scheme = scheme_rank(analytic::scheme_for(v, cfg.c0));
      for (RadialDomain d : domains)
        keys.insert({l, scheme, d});
    }
    if (want_physical)
      keys.insert({l, 0, RadialDomain::Physical});
  }

  const std::vector<OracleKey> key_list(keys.begin(), keys.end());
  std::vector<OracleOutcome> outcomes(key_list.size());
  parallel_for(key_list.size(), cfg.threads, [&](std::size_t i) {
    const OracleKey& k = key_list[i];
    const oracle::HamiltonianSpec spec{cfg.params, cfg.constants, k.l, scheme_from_rank(k.scheme, cfg.c0), k.domain};
    try {
      outcomes[i].result = oracle::spectrum(spec, cfg.grid, cfg.n_max + 1);
    } catch (const Error& e) {
      outcomes[i].error = e.what();
    }
  });
  std::map<OracleKey, const OracleOutcome*> by_key;
  for (std::size_t i = 0; i < key_list.size(); ++i)
    by_key[key_list[i]] = &outcomes[i];

  Report report{{"n", "l", "variant", "E_analytic", "E_oracle_physical", "E_oracle_extended", "delta_formula",
                 "delta_model", "oracle_error_estimate", "scheme", "E_oracle_exact_physical", "delta_total",
                 "status", "reason"},
                {},
                0};

  for (SpectrumVariant v : variants) {
    const ApproxScheme scheme = analytic::scheme_for(v, cfg.c0);
    for (int l = 0; l <= cfg.l_max; ++l) {
      for (int n = 0; n <= cfg.n_max; ++n) {
        std::optional<double> analytic_e;
        std::vector<std::string> reasons;
        bool failed = false;
        try {
          analytic_e = analytic::energy_level(cfg.params, cfg.constants, n, l, v, cfg.c0).E;
        } catch (const Error& e) {
          if (e.code() == Errc::NoBoundState) {
            reasons.push_back("analytic: no bound state");
          } else {
            reasons.push_back(std::string("analytic: ") + e.what());
            failed = true;
          }
        }

        double err_est = 0.0;
        bool any_oracle = false;
        const auto lookup = [&](int scheme_idx, RadialDomain d) -> std::optional<double> {
          const auto it = by_key.find({l, scheme_idx, d});
          if (it == by_key.end())
            return std::nullopt;
          const OracleOutcome& o = *it->second;
          if (!o.error.empty()) {
            reasons.push_back(std::string("oracle ") + oracle::domain_name(d) + ": " + o.error);
            failed = true;
            return std::nullopt;
          }
          if (static_cast<std::size_t>(n) >= o.result.levels.size())
            return std::nullopt;
          const oracle::EigenResult& r = o.result.levels[static_cast<std::size_t>(n)];
          err_est = std::max(err_est, r.richardson_error);
          any_oracle = true;
          return r.E;
        };
        const int si = scheme_rank(scheme);
        const auto phys = want_physical ? lookup(si, RadialDomain::Physical) : std::nullopt;
        const auto ext = want_extended ? lookup(si, RadialDomain::Extended) : std::nullopt;
        const auto exact = want_physical ? lookup(0, RadialDomain::Physical) : std::nullopt;

        // a level no side produced is dropped, except that n = 0 stays as an
        // explicit absent row
        const bool absent = !analytic_e && !any_oracle && !failed;
        if (absent && n > 0)
          continue;

        const auto diff = [](const std::optional<double>& a, const std::optional<double>& b) -> std::optional<double> {
          if (a && b)
            return *a - *b;
          return std::nullopt;
        };
        std::string reason;
        for (const auto& r : reasons)
          reason += (reason.empty() ? "" : "; ") + r;
        if (failed)
          ++report.failed_rows;
        report.rows.push_back({(long long)n, (long long)l, std::string(analytic::variant_name(v)),
                               opt_cell(analytic_e), opt_cell(phys), opt_cell(ext), opt_cell(diff(analytic_e, ext)),
                               opt_cell(diff(phys, ext)),
                               any_oracle ? Cell{err_est} : Cell{std::monostate{}}, std::string(scheme_name(scheme)),
                               opt_cell(exact), opt_cell(diff(analytic_e, exact)),
                               failed ? "error" : (absent ? "absent" : "ok"), reason});
      }
    }
  }
  return report;
}

Report run_approx_scan(const RunConfig& cfg) {
  validate_config(cfg, Command::ApproxScan);
  const double r_min = cfg.scan.r_min.value_or(1e-3 / cfg.params.alpha);
  const double r_max = cfg.scan.r_max.value_or(cfg.grid.r_max_factor / cfg.params.alpha);
  Report report{{"scheme", "r", "exact", "approx", "relative_error"}, {}, 0};
  for (const ApproxScheme& s : sorted_schemes(cfg.schemes, cfg.c0)) {
    try {
      for (const ApproxScanRow& row : approx_error_scan(s, cfg.params, r_min, r_max, cfg.scan.samples))
        report.rows.push_back({std::string(scheme_name(s)), row.r, row.exact, row.approx, row.relative_error});
    } catch (const Error& e) {
      if (e.code() == Errc::InvalidRange)
        config_error(e.what());
      throw;
    }
  }
  return report;
}

Report run_nu_derive(const RunConfig& cfg) {
  validate_config(cfg, Command::NuDerive);
  std::vector<ApproxScheme> schemes;
  for (const ApproxScheme& s : cfg.schemes)
    if (!std::holds_alternative<ExactCentrifugal>(s))
      schemes.push_back(s);
  for (SpectrumVariant v : cfg.variants)
    schemes.push_back(analytic::scheme_for(v, cfg.c0));
  schemes = sorted_schemes(schemes, cfg.c0);

  Report report{{"scheme",        "l",           "n",          "epsilon",      "beta",        "gamma",
                 "q",             "radicand_c0", "radicand_c1", "radicand_c2", "k_minus",     "k_plus",
                 "pi_minus_c0",   "pi_minus_c1", "pi_plus_c0",  "pi_plus_c1",  "selected_k",  "selected_pi_c0",
                 "selected_pi_c1", "tau_c0",     "tau_prime",   "lambda",      "lambda_n",    "phi_exponent_0",
                 "phi_exponent_1", "bound_epsilon", "lambda_at_bound", "lambda_n_at_bound", "status", "reason"},
                {},
                0};

  for (const ApproxScheme& s : schemes) {
    const bool pk = std::holds_alternative<PekerisImproved>(s);
    for (int l = 0; l <= cfg.l_max; ++l) {
      DimensionlessParams base = to_dimensionless(cfg.params, cfg.constants, 0.0, l);
      if (cfg.beta)
        base.beta = *cfg.beta;
      const auto problem_at = [&](double eps) {
        DimensionlessParams d = base;
        d.epsilon = eps;
        return pk ? analytic::build_problem_pekeris(d, cfg.params.q, cfg.c0)
                  : analytic::build_problem_ga(d, cfg.params.q);
      };

      std::optional<double> ground;
      try {
        ground = analytic::solve_engine_epsilon(base, cfg.params.q, pk, cfg.c0, 0);
      } catch (const Error&) {
      }

      for (int n = 0; n <= cfg.n_max; ++n) {
        std::vector<Cell> row{std::string(scheme_name(s)), (long long)l, (long long)n};
        const std::optional<double> probe = cfg.probe_epsilon ? cfg.probe_epsilon : ground;
        std::string status = "ok", reason;
        std::vector<Cell> trace(22, std::monostate{});
        trace[1] = base.beta;
        trace[2] = base.gamma;
        trace[3] = cfg.params.q;
        if (probe) {
          trace[0] = *probe;
          try {
            const nu::HypergeometricProblem prob = problem_at(*probe);
            const nu::KCandidates kc = nu::k_candidates(prob);
            const nu::NUDerivation d = nu::derive(prob);
            const nu::QuadraticPoly rad = nu::radicand(prob, d.k);
            const auto branches = nu::pi_branches(prob, d.k);
            trace[4] = rad.c0;
            trace[5] = rad.c1;
            trace[6] = rad.c2;
            trace[7] = kc.k_minus;
            trace[8] = kc.k_plus;
            trace[9] = branches[0].c0;
            trace[10] = branches[0].c1;
            trace[11] = branches[1].c0;
            trace[12] = branches[1].c1;
            trace[13] = d.k;
            trace[14] = d.pi.c0;
            trace[15] = d.pi.c1;
            trace[16] = d.tau.c0;
            trace[17] = d.tau_prime;
            trace[18] = d.lambda;
            trace[19] = nu::lambda_n(n, d, prob.sigma);
            trace[20] = d.phi_exponents[0];
            trace[21] = d.phi_exponents[1];
          } catch (const Error& e) {
            status = "error";
            reason = std::string("probe: ") + e.what();
          }
        } else {
          status = "error";
          reason = "no probe epsilon and no bound level to probe at";
        }

        std::vector<Cell> bound(3, std::monostate{});
        try {
          const double eps_n = analytic::solve_engine_epsilon(base, cfg.params.q, pk, cfg.c0, n);
          const nu::HypergeometricProblem prob = problem_at(eps_n);
          const nu::NUDerivation d = nu::derive(prob);
          bound = {eps_n, d.lambda, nu::lambda_n(n, d, prob.sigma)};
        } catch (const Error& e) {
          if (e.code() != Errc::NoBoundState) {
            status = "error";
            reason += (reason.empty() ? "" : "; ") + std::string("bound: ") + e.what();
          }
        }

        if (status == "error")
          ++report.failed_rows;
        row.insert(row.end(), trace.begin(), trace.end());
        row.insert(row.end(), bound.begin(), bound.end());
        row.emplace_back(status);
        row.emplace_back(reason);
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

} // namespace hua::harness
