#include "hua/analytic.hpp"

#include "hua/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hua::analytic {

namespace {

double c0_of(SpectrumVariant v, double c0) { return is_pekeris(v) ? c0 : 0.0; }

double zeta_radicand(const DimensionlessParams& d, double q, SpectrumVariant v) {
  const double b = d.beta, g = d.gamma;
  const double shifted = (1.0 / q - 1.0) * (1.0 / q - 1.0);
  switch (v) {
  case SpectrumVariant::GA_AsPrinted: return 0.25 - 2.0 * b / q + b + (b - g) / (q * q) + g / q;
  case SpectrumVariant::GA_Rederived: return 0.25 + b * shifted + g / q;
  case SpectrumVariant::Pekeris_AsPrinted: return 0.25 + b * shifted + g / q;
  case SpectrumVariant::Pekeris_Rederived: return 0.25 + b * shifted + g / (q * q);
  }
  return 0.0;
}

// The constant K in ((K - zeta^2) / zeta)^2.
double bracket_constant(const DimensionlessParams& d, double q, SpectrumVariant v) {
  switch (v) {
  case SpectrumVariant::GA_AsPrinted:
  case SpectrumVariant::GA_Rederived: return d.beta * (1.0 / (q * q) - 1.0);
  case SpectrumVariant::Pekeris_AsPrinted: return d.beta * (1.0 / q - 1.0);
  case SpectrumVariant::Pekeris_Rederived: return d.beta * (1.0 / (q * q) - 1.0) + d.gamma * (1.0 - q) / (q * q);
  }
  return 0.0;
}

double one_minus_qs(double r, double alpha, double q) {
  if (q > 0.0)
    return std::max(0.0, -std::expm1(std::log(q) - 2.0 * alpha * r));
  return 1.0 - q * std::exp(-2.0 * alpha * r);
}

double norm_integral(const WavefunctionForm& form, const HuaParams& p, double r0, double r1,
                     int intervals) {
  const double h = (r1 - r0) / intervals;
  std::vector<double> sq(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) {
    const double v = wavefunction_value(form, p, r0 + h * i);
    sq[static_cast<std::size_t>(i)] = v * v;
  }
  return simpson(sq, h);
}

} // namespace

std::string_view variant_name(SpectrumVariant v) noexcept {
  switch (v) {
  case SpectrumVariant::GA_AsPrinted: return "GA_AsPrinted";
  case SpectrumVariant::GA_Rederived: return "GA_Rederived";
  case SpectrumVariant::Pekeris_AsPrinted: return "Pekeris_AsPrinted";
  case SpectrumVariant::Pekeris_Rederived: return "Pekeris_Rederived";
  }
  return "";
}

std::optional<SpectrumVariant> parse_variant(std::string_view name) noexcept {
  for (SpectrumVariant v : kAllVariants)
    if (variant_name(v) == name)
      return v;
  return std::nullopt;
}

bool is_pekeris(SpectrumVariant v) noexcept {
  return v == SpectrumVariant::Pekeris_AsPrinted || v == SpectrumVariant::Pekeris_Rederived;
}

ApproxScheme scheme_for(SpectrumVariant v, double c0) {
  if (is_pekeris(v))
    return PekerisImproved{c0};
  return GreeneAldrichDeformed{};
}

nu::HypergeometricProblem build_problem_ga(const DimensionlessParams& d, double q) {
  const double e = d.epsilon, b = d.beta, g = d.gamma;
  return {
      {1.0, -q},
      {0.0, 1.0, -q},
      {-(e + b), 2.0 * e * q + 2.0 * b - g, -(e * q * q + b)},
  };
}

nu::HypergeometricProblem build_problem_pekeris(const DimensionlessParams& d, double q, double c0) {
  const double e = d.epsilon, b = d.beta, g = d.gamma;
  return {
      {1.0, -q},
      {0.0, 1.0, -q},
      {-(e + b + g * c0), 2.0 * e * q + 2.0 * b + 2.0 * g * c0 * q - g,
       -(e * q * q + b + g * c0 * q * q + g * (1.0 - q))},
  };
}

double zeta(int n, const DimensionlessParams& d, double q, SpectrumVariant variant, double) {
  const double rad = zeta_radicand(d, q, variant);
  if (rad < 0.0)
    throw Error(Errc::NegativeRadicand, std::string(variant_name(variant)) + " radicand is negative");
  return n + 0.5 + std::sqrt(rad);
}

EnergyLevel energy_level(const HuaParams& p, const SystemConstants& c, int n, int l,
                         SpectrumVariant variant, double c0) {
  const DimensionlessParams d = to_dimensionless(p, c, 0.0, l);
  const double z = zeta(n, d, p.q, variant, c0);
  const double K = bracket_constant(d, p.q, variant);
  const double nu_exp = (K - z * z) / (2.0 * z); // exponent of s, sqrt(eps + beta + gamma c0)
  const double unit = c.hbar * c.hbar * p.alpha * p.alpha / c.mu;
  const double shift = 2.0 * unit * c0_of(variant, c0) * d.gamma;
  const double E = p.V1 + shift - 2.0 * unit * nu_exp * nu_exp;
  if (!(nu_exp > 0.0) || !(E > 0.0))
    throw Error(Errc::NoBoundState, "n = " + std::to_string(n) + ", l = " + std::to_string(l) +
                                        " does not bind under " + std::string(variant_name(variant)));
  return {n, l, E, z, to_dimensionless(p, c, E, l).epsilon, variant};
}

int max_level_count(const HuaParams& p, const SystemConstants& c, int l, SpectrumVariant variant,
                    double c0) {
  int count = 0;
  try {
    while (count < 1'000'000) {
      energy_level(p, c, count, l, variant, c0);
      ++count;
    }
  } catch (const Error&) {
  }
  return count;
}

double solve_engine_epsilon(const DimensionlessParams& base, double q, bool pekeris, double c0, int n) {
  const nu::ProblemBuilder builder = [&](double eps) {
    DimensionlessParams d = base;
    d.epsilon = eps;
    return pekeris ? build_problem_pekeris(d, q, c0) : build_problem_ga(d, q);
  };

  // s-exponent sqrt(eps + beta + gamma c0) vanishes at the lower end
  const double lo = -(base.beta + (pekeris ? base.gamma * c0 : 0.0));
  const auto no_level = [&] {
    return Error(Errc::NoBoundState, "NU quantization has no root for n = " + std::to_string(n));
  };
  double f_lo;
  try {
    f_lo = nu::quantization_residual(builder, lo, n);
  } catch (const Error&) {
    throw no_level();
  }
  if (!(f_lo > 0.0))
    throw no_level();

  double hi = 0.0;
  bool found = false;
  for (int i = 0; i < 200 && !found; ++i) {
    try {
      found = nu::quantization_residual(builder, hi, n) < 0.0;
    } catch (const Error&) {
    }
    if (!found)
      hi = 2.0 * hi + 1.0;
  }
  if (!found)
    throw no_level();
  return nu::solve_epsilon(builder, n, {lo, hi}, 1e-12);
}

EnergyLevel engine_energy_level(const HuaParams& p, const SystemConstants& c, int n, int l,
                                SpectrumVariant variant, double c0) {
  const DimensionlessParams base = to_dimensionless(p, c, 0.0, l);
  const bool pk = is_pekeris(variant);
  const double eps = solve_engine_epsilon(base, p.q, pk, c0, n);
  DimensionlessParams d = base;
  d.epsilon = eps;
  const nu::NUDerivation deriv = nu::derive(pk ? build_problem_pekeris(d, p.q, c0) : build_problem_ga(d, p.q));
  // rho exponent at s = 1/q is 2u, and zeta = n + 1/2 + u
  const double z = n + 0.5 + 0.5 * deriv.rho_exponents[1];
  return {n, l, energy_from_epsilon(eps, p, c), z, eps, variant};
}

WavefunctionForm wavefunction_form(const HuaParams& p, const SystemConstants& c, int n, int l,
                                   SpectrumVariant variant, double c0) {
  const EnergyLevel level = energy_level(p, c, n, l, variant, c0);
  const DimensionlessParams d = to_dimensionless(p, c, level.E, l);
  const double A = std::sqrt(d.epsilon + d.beta + c0_of(variant, c0) * d.gamma);
  const double u = level.zeta - n - 0.5;
  return {A, 0.5 + u, 2.0 * A, 2.0 * u, n, p.q, 1.0};
}

double wavefunction_value(const WavefunctionForm& form, const HuaParams& p, double r) {
  const double s = std::exp(-2.0 * p.alpha * r);
  const double w = one_minus_qs(r, p.alpha, form.q);
  if (w <= 0.0)
    return 0.0;
  const double envelope = std::exp(-2.0 * p.alpha * r * form.A) * std::pow(w, form.B);
  return form.norm * envelope * jacobi_eval(form.n, form.jacobi_a, form.jacobi_b, 1.0 - 2.0 * form.q * s);
}

double natural_left_endpoint(const HuaParams& p) {
  if (p.q > 0.0 && p.q < 1.0)
    return std::log(p.q) / (2.0 * p.alpha);
  return 0.0;
}

std::vector<double> wavefunction_grid(const WavefunctionForm& form, const HuaParams& p, int n_points) {
  const double left = natural_left_endpoint(p);
  double right = std::max(left, 0.0) + (30.0 + 4.0 * form.n) / (2.0 * p.alpha * form.A);
  for (int attempt = 0; attempt < 40; ++attempt) {
    double peak = 0.0;
    const int probe = 4000;
    for (int i = 0; i <= probe; ++i)
      peak = std::max(peak, std::abs(wavefunction_value(form, p, left + (right - left) * i / probe)));
    if (std::abs(wavefunction_value(form, p, right)) < 1e-13 * peak)
      break;
    right = left + 1.5 * (right - left);
  }
  std::vector<double> grid(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i)
    grid[static_cast<std::size_t>(i)] = left + (right - left) * i / (n_points - 1);
  return grid;
}

double simpson(std::span<const double> values, double h) {
  const std::size_t n = values.size();
  if (n < 3 || n % 2 == 0)
    throw Error(Errc::InvalidRange, "Simpson needs an odd number (>= 3) of samples");
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i)
    (i % 2 ? odd : even) += values[i];
  return h / 3.0 * (values.front() + values.back() + 4.0 * odd + 2.0 * even);
}

WavefunctionSamples radial_wavefunction_samples(const WavefunctionForm& form, const HuaParams& p,
                                                std::span<const double> r_grid) {
  if (r_grid.size() < 2)
    throw Error(Errc::GridTooShort, "need at least two radii");
  WavefunctionForm f = form;
  f.norm = 1.0;
  const double r0 = r_grid.front(), r1 = r_grid.back();

  int intervals = 2048;
  double integral = norm_integral(f, p, r0, r1, intervals);
  for (int i = 0; i < 12; ++i) {
    intervals *= 2;
    const double next = norm_integral(f, p, r0, r1, intervals);
    const bool done = std::abs(next - integral) < 1e-10 * std::abs(next);
    integral = next;
    if (done)
      break;
  }
  f.norm = 1.0 / std::sqrt(integral);

  if (std::abs(wavefunction_value(f, p, r0)) >= 1e-10 || std::abs(wavefunction_value(f, p, r1)) >= 1e-10)
    throw Error(Errc::GridTooShort, "wavefunction has not decayed below 1e-10 at the grid ends");

  WavefunctionSamples out{f, {r_grid.begin(), r_grid.end()}, {}};
  out.R.reserve(r_grid.size());
  for (double r : r_grid)
    out.R.push_back(wavefunction_value(f, p, r));
  return out;
}

} // namespace hua::analytic
