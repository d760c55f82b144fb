#include "hua/potential.hpp"

#include "hua/error.hpp"

#include <cmath>
#include <string>

namespace hua {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

ValidatedParams validate_params(const HuaParams& p, const SystemConstants& c) {
  if (!(p.V1 > 0.0) || !std::isfinite(p.V1))
    throw Error(Errc::NonPositiveDepth, "V1 must be positive, got " + std::to_string(p.V1));
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha))
    throw Error(Errc::NonPositiveRange, "alpha must be positive, got " + std::to_string(p.alpha));
  if (!(p.q < 1.0) || p.q == 0.0 || !std::isfinite(p.q))
    throw Error(Errc::DeformationOutOfRange, "q must satisfy q < 1 and q != 0, got " + std::to_string(p.q));
  if (!(c.mu > 0.0) || !(c.hbar > 0.0) || !std::isfinite(c.mu) || !std::isfinite(c.hbar))
    throw Error(Errc::NonPositiveMassOrHbar, "mu and hbar must be positive");
  return ValidatedParams(p, c);
}

double hua_potential(double r, const HuaParams& p) {
  const double s = std::exp(-2.0 * p.alpha * r);
  // 1 - s computed without cancellation near r = 0
  const double num = -std::expm1(-2.0 * p.alpha * r);
  const double ratio = num / (1.0 - p.q * s);
  return p.V1 * ratio * ratio;
}

double inverse_square(const ApproxScheme& scheme, double r, double alpha, double deformation) {
  const double s = std::exp(-2.0 * alpha * r);
  // at deformation 1 use the cancellation-free form of 1 - s
  const double denom = deformation == 1.0 ? -std::expm1(-2.0 * alpha * r) : 1.0 - deformation * s;
  // approximations stay finite down to the pole of 1/(1 - q s), which lies at r < 0 for 0 < q < 1
  const bool exact = std::holds_alternative<ExactCentrifugal>(scheme);
  if (exact ? !(r > 0.0) : !(denom > 0.0))
    throw Error(Errc::NonPositiveRadius, "r outside the scheme's domain, got " + std::to_string(r));
  const double w = s / denom;
  return std::visit(overloaded{
                        [&](const ExactCentrifugal&) { return 1.0 / (r * r); },
                        [&](const GreeneAldrichDeformed&) { return 4.0 * alpha * alpha * s / (denom * denom); },
                        [&](const PekerisImproved& pk) { return 4.0 * alpha * alpha * (pk.c0 + w + w * w); },
                    },
                    scheme);
}

double centrifugal_term(double r, int l, const ApproxScheme& scheme, const HuaParams& p,
                        const SystemConstants& c) {
  if (l == 0)
    return 0.0;
  if (!(r > 0.0))
    throw Error(Errc::NonPositiveRadius, "r must be positive, got " + std::to_string(r));
  const double strength = c.hbar * c.hbar * l * (l + 1.0) / (2.0 * c.mu);
  return strength * inverse_square(scheme, r, p.alpha, p.q);
}

double effective_potential(double r, int l, const ApproxScheme& scheme, const HuaParams& p,
                           const SystemConstants& c) {
  return hua_potential(r, p) + centrifugal_term(r, l, scheme, p, c);
}

double dissociation_threshold(int l, const ApproxScheme& scheme, const HuaParams& p,
                              const SystemConstants& c) {
  if (const auto* pk = std::get_if<PekerisImproved>(&scheme))
    return p.V1 + 2.0 * c.hbar * c.hbar * p.alpha * p.alpha * pk->c0 * l * (l + 1.0) / c.mu;
  return p.V1;
}

DimensionlessParams to_dimensionless(const HuaParams& p, const SystemConstants& c, double E, int l) {
  const double scale = 2.0 * c.hbar * c.hbar * p.alpha * p.alpha / c.mu;
  return {-E / scale, p.V1 / scale, l * (l + 1.0)};
}

double energy_from_epsilon(double epsilon, const HuaParams& p, const SystemConstants& c) {
  return -2.0 * c.hbar * c.hbar * p.alpha * p.alpha * epsilon / c.mu;
}

std::vector<ApproxScanRow> approx_error_scan(const ApproxScheme& scheme, double alpha,
                                             double deformation, double r_min, double r_max,
                                             int samples) {
  if (!(r_min > 0.0) || !(r_min < r_max) || samples < 2)
    throw Error(Errc::InvalidRange, "need 0 < r_min < r_max and samples >= 2");
  std::vector<ApproxScanRow> rows;
  rows.reserve(static_cast<std::size_t>(samples));
  const double log_lo = std::log(r_min);
  const double log_hi = std::log(r_max);
  for (int i = 0; i < samples; ++i) {
    double r;
    if (i == 0)
      r = r_min;
    else if (i == samples - 1)
      r = r_max;
    else
      r = std::exp(log_lo + (log_hi - log_lo) * i / (samples - 1));
    const double exact = 1.0 / (r * r);
    const double approx = inverse_square(scheme, r, alpha, deformation);
    rows.push_back({r, exact, approx, std::abs(approx - exact) / exact});
  }
  return rows;
}

const char* scheme_name(const ApproxScheme& scheme) noexcept {
  return std::visit(overloaded{
                        [](const ExactCentrifugal&) { return "ExactCentrifugal"; },
                        [](const GreeneAldrichDeformed&) { return "GreeneAldrichDeformed"; },
                        [](const PekerisImproved&) { return "PekerisImproved"; },
                    },
                    scheme);
}

} // namespace hua
