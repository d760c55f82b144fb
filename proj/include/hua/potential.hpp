#pragma once

// Hua potential, centrifugal-term approximations and the dimensionless
// (epsilon, beta, gamma) mapping used by the hypergeometric reduction.

#include <variant>
#include <vector>

namespace hua {

struct HuaParams {
  double V1 = 1.0;    // depth (dissociation limit)
  double alpha = 0.5; // range parameter, inverse length
  double q = 0.5;     // deformation
};

struct SystemConstants {
  double mu = 1.0;
  double hbar = 1.0;
};

struct QuantumNumbers {
  int n = 0;
  int l = 0;
};

struct DimensionlessParams {
  double epsilon = 0.0; // -mu E / (2 hbar^2 alpha^2)
  double beta = 0.0;    //  mu V1 / (2 hbar^2 alpha^2)
  double gamma = 0.0;   //  l (l + 1)
};

/// Exact 1/r^2 barrier.
struct ExactCentrifugal {};

/// 1/r^2 ~ 4 alpha^2 s / (1 - q s)^2 with s = exp(-2 alpha r).
struct GreeneAldrichDeformed {};

/// 1/r^2 ~ 4 alpha^2 (c0 + s/(1 - q s) + s^2/(1 - q s)^2).
struct PekerisImproved {
  double c0 = 1.0 / 12.0;
};

using ApproxScheme = std::variant<ExactCentrifugal, GreeneAldrichDeformed, PekerisImproved>;

/// Validated parameter bundle. Only `validate_params` constructs one.
class ValidatedParams {
public:
  const HuaParams& params() const noexcept { return params_; }
  const SystemConstants& constants() const noexcept { return constants_; }

private:
  friend ValidatedParams validate_params(const HuaParams&, const SystemConstants&);
  ValidatedParams(HuaParams p, SystemConstants c) : params_(p), constants_(c) {}
  HuaParams params_;
  SystemConstants constants_;
};

/// Throws hua::Error naming the first violated constraint.
ValidatedParams validate_params(const HuaParams& p, const SystemConstants& c);

/// V1 ((1 - e^{-2 alpha r}) / (1 - q e^{-2 alpha r}))^2
double hua_potential(double r, const HuaParams& p);

/// The scheme's stand-in for 1/r^2 with an explicit deformation, so the
/// undeformed textbook forms (deformation = 1) can be evaluated directly.
double inverse_square(const ApproxScheme& scheme, double r, double alpha, double deformation);

/// hbar^2 l(l+1) / (2 mu) times the scheme's 1/r^2. Zero for l = 0.
double centrifugal_term(double r, int l, const ApproxScheme& scheme, const HuaParams& p,
                        const SystemConstants& c);

double effective_potential(double r, int l, const ApproxScheme& scheme, const HuaParams& p,
                           const SystemConstants& c);

/// Limit of the effective potential as r -> infinity.
double dissociation_threshold(int l, const ApproxScheme& scheme, const HuaParams& p,
                              const SystemConstants& c);

DimensionlessParams to_dimensionless(const HuaParams& p, const SystemConstants& c, double E, int l);

/// Inverse of the epsilon part of `to_dimensionless`.
double energy_from_epsilon(double epsilon, const HuaParams& p, const SystemConstants& c);

struct ApproxScanRow {
  double r = 0.0;
  double exact = 0.0;  // 1/r^2
  double approx = 0.0; // scheme's stand-in
  double relative_error = 0.0;
};

/// Log-spaced comparison of the scheme's 1/r^2 against the exact value.
std::vector<ApproxScanRow> approx_error_scan(const ApproxScheme& scheme, double alpha,
                                             double deformation, double r_min, double r_max,
                                             int samples);

inline std::vector<ApproxScanRow> approx_error_scan(const ApproxScheme& scheme, const HuaParams& p,
                                                    double r_min, double r_max, int samples) {
  return approx_error_scan(scheme, p.alpha, p.q, r_min, r_max, samples);
}

const char* scheme_name(const ApproxScheme& scheme) noexcept;

} // namespace hua
