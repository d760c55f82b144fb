#include "hua/nu_engine.hpp"

#include "hua/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace hua::nu {

namespace {

constexpr double kSquareTol = 1e-9;

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

struct Candidate {
  double k;
  LinearPoly pi;
  LinearPoly tau;
  std::array<double, 2> phi;
};

// Distinct real roots ordered by magnitude.
std::array<double, 2> sigma_roots(const QuadraticPoly& sigma) {
  const double a = sigma.c2, b = sigma.c1, c = sigma.c0;
  if (a == 0.0)
    throw Error(Errc::UnsupportedSigma, "sigma must be quadratic");
  const double disc = b * b - 4.0 * a * c;
  if (!(disc > 0.0))
    throw Error(Errc::UnsupportedSigma, "sigma needs two distinct real roots");
  const double t = -0.5 * (b + sign_of(b) * std::sqrt(disc));
  double r0 = t / a;
  double r1 = t != 0.0 ? c / t : -r0;
  if (std::abs(r1) < std::abs(r0))
    std::swap(r0, r1);
  return {r0, r1};
}

// Residues of f/sigma at the two simple roots of sigma.
std::array<double, 2> residues(const LinearPoly& f, const QuadraticPoly& sigma,
                               const std::array<double, 2>& roots) {
  const LinearPoly ds = sigma.derivative();
  return {f(roots[0]) / ds(roots[0]), f(roots[1]) / ds(roots[1])};
}

} // namespace

double QuadraticPoly::scale() const noexcept {
  return std::max({std::abs(c0), std::abs(c1), std::abs(c2)});
}

QuadraticPoly radicand(const HypergeometricProblem& prob, double k) {
  const LinearPoly ds = prob.sigma.derivative();
  const double l0 = 0.5 * (ds.c0 - prob.tau_tilde.c0);
  const double l1 = 0.5 * (ds.c1 - prob.tau_tilde.c1);
  return {
      l0 * l0 - prob.sigma_tilde.c0 + k * prob.sigma.c0,
      2.0 * l0 * l1 - prob.sigma_tilde.c1 + k * prob.sigma.c1,
      l1 * l1 - prob.sigma_tilde.c2 + k * prob.sigma.c2,
  };
}

bool is_perfect_square(const QuadraticPoly& poly, double rel_tol) {
  const double scale = poly.scale();
  if (scale == 0.0)
    return true;
  const double a = poly.c2 / scale, b = poly.c1 / scale, c = poly.c0 / scale;
  if (a < -rel_tol || c < -rel_tol)
    return false;
  return std::abs(b * b - 4.0 * a * c) <= rel_tol;
}

KCandidates k_candidates(const HypergeometricProblem& prob) {
  const QuadraticPoly r0 = radicand(prob, 0.0);
  const QuadraticPoly& sg = prob.sigma;
  // discriminant of radicand(k) as a quadratic in k
  const double a = sg.c1 * sg.c1 - 4.0 * sg.c2 * sg.c0;
  const double b = 2.0 * r0.c1 * sg.c1 - 4.0 * (r0.c2 * sg.c0 + r0.c0 * sg.c2);
  const double c = r0.c1 * r0.c1 - 4.0 * r0.c2 * r0.c0;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});

  if (std::abs(a) <= 1e-14 * scale || a == 0.0) {
    if (std::abs(b) <= 1e-14 * scale || b == 0.0)
      throw Error(Errc::DegenerateK, "k-equation has no k dependence");
    const double k = -c / b;
    return {k, k, true};
  }

  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    if (disc < -1e-12 * (b * b + std::abs(4.0 * a * c)))
      throw Error(Errc::ComplexKRoots, "no real k makes the radicand a perfect square");
    disc = 0.0;
  }
  const double t = -0.5 * (b + sign_of(b) * std::sqrt(disc));
  double k1 = t / a;
  double k2 = t != 0.0 ? c / t : k1;
  if (k2 < k1)
    std::swap(k1, k2);
  return {k1, k2, false};
}

std::array<LinearPoly, 2> pi_branches(const HypergeometricProblem& prob, double k) {
  const QuadraticPoly rad = radicand(prob, k);
  if (!is_perfect_square(rad, kSquareTol))
    throw Error(Errc::NotPerfectSquare, "radicand is not a perfect square at k = " + std::to_string(k));
  const double ra = std::sqrt(std::max(rad.c2, 0.0));
  const double rc = std::sqrt(std::max(rad.c0, 0.0));
  // (ra s + sgn rc)^2 has cross term 2 sgn ra rc = c1
  const LinearPoly root{sign_of(rad.c1) * rc, ra};
  const LinearPoly ds = prob.sigma.derivative();
  const LinearPoly half{0.5 * (ds.c0 - prob.tau_tilde.c0), 0.5 * (ds.c1 - prob.tau_tilde.c1)};
  return {LinearPoly{half.c0 - root.c0, half.c1 - root.c1}, LinearPoly{half.c0 + root.c0, half.c1 + root.c1}};
}

NUDerivation derive(const HypergeometricProblem& prob) {
  const auto roots = sigma_roots(prob.sigma);
  const KCandidates kc = k_candidates(prob);

  std::vector<double> ks{kc.k_minus};
  if (!kc.degenerate && kc.k_plus != kc.k_minus)
    ks.push_back(kc.k_plus);

  std::vector<Candidate> valid;
  double slope_scale = 1.0;
  for (double k : ks) {
    for (const LinearPoly& pi : pi_branches(prob, k)) {
      const LinearPoly tau{prob.tau_tilde.c0 + 2.0 * pi.c0, prob.tau_tilde.c1 + 2.0 * pi.c1};
      const auto phi = residues(pi, prob.sigma, roots);
      slope_scale = std::max(slope_scale, std::abs(tau.c1));
      const double phi_tol = 1e-12 * std::max(1.0, std::abs(pi.c0) + std::abs(pi.c1));
      if (tau.c1 < 0.0 && phi[0] >= -phi_tol)
        valid.push_back({k, pi, tau, phi});
    }
  }
  if (valid.empty())
    throw Error(Errc::NoPhysicalBranch, "no (k, pi) combination gives tau' < 0 with decay at s = 0");

  std::sort(valid.begin(), valid.end(),
            [](const Candidate& x, const Candidate& y) { return x.tau.c1 < y.tau.c1; });
  if (valid.size() > 1) {
    const Candidate& a = valid[0];
    const Candidate& b = valid[1];
    const bool same_slope = std::abs(a.tau.c1 - b.tau.c1) <= 1e-12 * slope_scale;
    const bool same_pi = std::abs(a.pi.c0 - b.pi.c0) <= 1e-12 * slope_scale &&
                         std::abs(a.pi.c1 - b.pi.c1) <= 1e-12 * slope_scale;
    if (same_slope && !same_pi)
      throw Error(Errc::BranchTie, "two distinct branches share the most negative tau'");
  }

  const Candidate& best = valid.front();
  NUDerivation d;
  d.k = best.k;
  d.pi = best.pi;
  d.tau = best.tau;
  d.tau_prime = best.tau.c1;
  d.lambda = best.k + best.pi.c1;
  d.sigma_roots = roots;
  d.phi_exponents = best.phi;
  const LinearPoly ds = prob.sigma.derivative();
  d.rho_exponents = residues(LinearPoly{best.tau.c0 - ds.c0, best.tau.c1 - ds.c1}, prob.sigma, roots);
  return d;
}

double lambda_n(int n, const NUDerivation& d, const QuadraticPoly& sigma) {
  const double sigma_pp = 2.0 * sigma.c2;
  return -n * d.tau_prime - 0.5 * n * (n - 1.0) * sigma_pp;
}

double quantization_residual(const ProblemBuilder& builder, double eps, int n) {
  const HypergeometricProblem prob = builder(eps);
  const NUDerivation d = derive(prob);
  return d.lambda - lambda_n(n, d, prob.sigma);
}

double solve_epsilon(const ProblemBuilder& builder, int n, std::pair<double, double> bracket,
                     double tol) {
  double lo = bracket.first, hi = bracket.second;
  double f_lo = quantization_residual(builder, lo, n);
  double f_hi = quantization_residual(builder, hi, n);
  if (f_lo == 0.0)
    return lo;
  if (f_hi == 0.0)
    return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0))
    throw Error(Errc::NoSignChange, "residual has the same sign at both bracket ends");

  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi))
      return std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
    const double f_mid = quantization_residual(builder, mid, n);
    if (std::abs(f_mid) <= tol && std::abs(hi - lo) <= 1e-13 * std::max(1.0, std::abs(mid)))
      return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  throw Error(Errc::MaxIterations, "bisection did not converge");
}

} // namespace hua::nu
