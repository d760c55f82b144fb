#pragma once

// Closed-form spectrum and wavefunctions of the Hua potential under the
// two centrifugal schemes. The "as-printed" variants carry an alternative
// radicand (GA) and K bracket (Pekeris) kept for auditing; the "rederived"
// variants follow from carrying the hypergeometric reduction through (and
// agree with nu::solve_epsilon).

#include "hua/nu_engine.hpp"
#include "hua/potential.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace hua::analytic {

enum class SpectrumVariant { GA_AsPrinted, GA_Rederived, Pekeris_AsPrinted, Pekeris_Rederived };

inline constexpr SpectrumVariant kAllVariants[] = {
    SpectrumVariant::GA_AsPrinted, SpectrumVariant::GA_Rederived,
    SpectrumVariant::Pekeris_AsPrinted, SpectrumVariant::Pekeris_Rederived};

std::string_view variant_name(SpectrumVariant v) noexcept;
std::optional<SpectrumVariant> parse_variant(std::string_view name) noexcept;
bool is_pekeris(SpectrumVariant v) noexcept;

/// The approximated Hamiltonian a variant claims to solve.
ApproxScheme scheme_for(SpectrumVariant v, double c0);

struct EnergyLevel {
  int n = 0;
  int l = 0;
  double E = 0.0;
  double zeta = 0.0;
  double epsilon = 0.0;
  SpectrumVariant variant = SpectrumVariant::GA_Rederived;
};

struct WavefunctionForm {
  double A = 0.0; // exponent of s
  double B = 0.0; // exponent of (1 - q s)
  double jacobi_a = 0.0;
  double jacobi_b = 0.0;
  int n = 0;
  double q = 0.0;
  double norm = 1.0; // filled by radial_wavefunction_samples
};

/// tau~ = 1 - q s, sigma = s (1 - q s),
/// sigma~ = -s^2 (eps q^2 + beta) + s (2 eps q + 2 beta - gamma) - (eps + beta)
nu::HypergeometricProblem build_problem_ga(const DimensionlessParams& d, double q);

/// Same reduction with the q-deformed Pekeris-type 1/r^2.
nu::HypergeometricProblem build_problem_pekeris(const DimensionlessParams& d, double q, double c0);

/// n + 1/2 + sqrt(radicand) with the variant's radicand.
double zeta(int n, const DimensionlessParams& d, double q, SpectrumVariant variant, double c0);

/// Throws NoBoundState when the level does not bind under the variant.
EnergyLevel energy_level(const HuaParams& p, const SystemConstants& c, int n, int l,
                         SpectrumVariant variant, double c0);

int max_level_count(const HuaParams& p, const SystemConstants& c, int l, SpectrumVariant variant,
                    double c0);

/// Root of the NU quantization condition for level n on the GA (pekeris =
/// false) or Pekeris problem with the given beta, gamma. Throws NoBoundState
/// when no root exists above the s-exponent threshold.
double solve_engine_epsilon(const DimensionlessParams& base, double q, bool pekeris, double c0, int n);

/// Energy obtained by root-finding the NU quantization condition on the
/// variant's scheme problem (build_problem_ga / build_problem_pekeris).
/// Independent of the closed forms above.
EnergyLevel engine_energy_level(const HuaParams& p, const SystemConstants& c, int n, int l,
                                SpectrumVariant variant, double c0);

/// P_n^{(a,b)}(x) by the three-term recurrence.
double jacobi_eval(int n, double a, double b, double x);

WavefunctionForm wavefunction_form(const HuaParams& p, const SystemConstants& c, int n, int l,
                                   SpectrumVariant variant, double c0);

/// Unnormalized N s^A (1 - q s)^B P_n^{(2A, 2u)}(1 - 2 q s) at radius r (N = form.norm).
double wavefunction_value(const WavefunctionForm& form, const HuaParams& p, double r);

/// Left end of the natural domain of the closed-form solution: ln(q)/(2 alpha)
/// for 0 < q < 1, else 0.
double natural_left_endpoint(const HuaParams& p);

/// Uniform grid from the natural left endpoint out to where the tail drops
/// below 1e-13 of the peak.
std::vector<double> wavefunction_grid(const WavefunctionForm& form, const HuaParams& p, int n_points);

struct WavefunctionSamples {
  WavefunctionForm form; // norm filled in
  std::vector<double> r;
  std::vector<double> R;
};

/// Normalizes on [r_grid.front(), r_grid.back()] by composite Simpson with
/// grid doubling, then samples. Positive at large r.
WavefunctionSamples radial_wavefunction_samples(const WavefunctionForm& form, const HuaParams& p,
                                                std::span<const double> r_grid);

/// Composite Simpson on an odd number of uniformly spaced samples.
double simpson(std::span<const double> values, double h);

} // namespace hua::analytic
