#pragma once

// Numeric Nikiforov-Uvarov reduction of
//
//   psi'' + (tau_tilde / sigma) psi' + (sigma_tilde / sigma^2) psi = 0
//
// working on polynomial coefficients only. Every quantity the closed forms
// claim (k, pi, tau, lambda, the phi and rho exponents, the quantized
// energy) is recomputed here from the three input polynomials.

#include <array>
#include <functional>
#include <utility>

namespace hua::nu {

struct LinearPoly {
  double c0 = 0.0;
  double c1 = 0.0;

  double operator()(double s) const noexcept { return c0 + c1 * s; }
  double slope() const noexcept { return c1; }
};

struct QuadraticPoly {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double operator()(double s) const noexcept { return c0 + s * (c1 + s * c2); }
  LinearPoly derivative() const noexcept { return {c1, 2.0 * c2}; }
  double scale() const noexcept;
};

struct HypergeometricProblem {
  LinearPoly tau_tilde;
  QuadraticPoly sigma;
  QuadraticPoly sigma_tilde;
};

struct NUDerivation {
  double k = 0.0;
  LinearPoly pi;
  LinearPoly tau;
  double lambda = 0.0;
  /// Roots of sigma, ordered by magnitude (for the Hua family: 0, then 1/q).
  std::array<double, 2> sigma_roots{};
  /// phi = |s - r0|^e0 |s - r1|^e1 with r = sigma_roots.
  std::array<double, 2> phi_exponents{};
  /// rho = |s - r0|^e0 |s - r1|^e1.
  std::array<double, 2> rho_exponents{};
  double tau_prime = 0.0;
};

struct KCandidates {
  double k_minus = 0.0;
  double k_plus = 0.0;
  /// The k-equation lost its quadratic term; both entries hold its single root.
  bool degenerate = false;
};

/// ((sigma' - tau_tilde)/2)^2 - sigma_tilde + k sigma
QuadraticPoly radicand(const HypergeometricProblem& prob, double k);

/// True when b^2 - 4ac vanishes to 1e-9 relative to the coefficient scale.
bool is_perfect_square(const QuadraticPoly& poly, double rel_tol = 1e-9);

/// Both k that make the radicand a perfect square.
KCandidates k_candidates(const HypergeometricProblem& prob);

/// pi_- and pi_+ for a given k (first entry subtracts the linear root).
std::array<LinearPoly, 2> pi_branches(const HypergeometricProblem& prob, double k);

/// Selects the physical (k, pi) pair. Candidates must have tau' < 0 and a
/// positive phi exponent at the root of sigma nearest s = 0 (decay there);
/// among those the most negative tau' wins.
NUDerivation derive(const HypergeometricProblem& prob);

/// -n tau' - n(n-1)/2 sigma''
double lambda_n(int n, const NUDerivation& d, const QuadraticPoly& sigma);

using ProblemBuilder = std::function<HypergeometricProblem(double epsilon)>;

/// lambda(eps) - lambda_n(eps); zero at a quantized energy parameter.
double quantization_residual(const ProblemBuilder& builder, double eps, int n);

/// Bisection on the residual. The bracket ends must give opposite signs.
double solve_epsilon(const ProblemBuilder& builder, int n, std::pair<double, double> bracket,
                     double tol = 1e-12);

} // namespace hua::nu
