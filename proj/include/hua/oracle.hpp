#pragma once

// Numerical eigenvalue oracle for the radial equation
//
//   -(hbar^2 / 2 mu) u'' + V_eff(r) u = E u,   u = 0 at both ends,
//
// by second-order finite differences (Sturm-sequence bisection, Richardson
// extrapolation over grid doublings) and, independently, Numerov shooting.

#include "hua/potential.hpp"

#include <span>
#include <vector>

namespace hua::oracle {

/// Physical: r in (0, r_max). Extended: r in (ln(q)/(2 alpha), r_max), the
/// interval between the ODE's singular points s = 1/q and s = 0.
enum class RadialDomain { Physical, Extended };

const char* domain_name(RadialDomain d) noexcept;

struct GridSpec {
  int n_points = 20000;       // interior points of the coarsest grid
  double r_max_factor = 14.0; // right end = r_max_factor / alpha
  int refinement_levels = 2;  // grid doublings after the coarsest
};

struct HamiltonianSpec {
  HuaParams params;
  SystemConstants constants;
  int l = 0;
  ApproxScheme scheme = GreeneAldrichDeformed{};
  RadialDomain domain = RadialDomain::Extended;
};

struct RadialGrid {
  double left = 0.0;
  double right = 0.0;
  double h = 0.0;
  std::vector<double> r; // interior points only
};

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off; // size diag.size() - 1
};

struct EigenResult {
  double E = 0.0;
  int index = 0;
  double residual = 0.0;
  double richardson_error = 0.0;
  int grid_points = 0;
  int nodes = 0;
  std::vector<double> grid_energies; // coarsest to finest
};

struct SpectrumResult {
  std::vector<EigenResult> levels;
  bool fewer_bound_states = false;
};

/// n interior points of [left, right]; h = (right - left) / (n + 1).
RadialGrid uniform_interior_grid(double left, double right, int n);

double domain_left(const HamiltonianSpec& spec);

/// V(r) + l(l+1) hbar^2/(2 mu) A(r); valid on the whole extended domain for
/// the approximated schemes.
double spec_potential(double r, const HamiltonianSpec& spec);

RadialGrid build_grid(const HamiltonianSpec& spec, const GridSpec& g);

/// -(hbar^2/2mu) D2 + diag(potential) on the grid's interior points.
Tridiagonal fd_operator(const RadialGrid& grid, std::span<const double> potential, double mu, double hbar);

Tridiagonal fd_hamiltonian(const RadialGrid& grid, const HamiltonianSpec& spec);

/// Number of eigenvalues strictly below E.
int sturm_count(const Tridiagonal& op, double E);

double eigen_bisect(const Tridiagonal& op, int k, double tol);

/// Eigenvector for an eigenvalue estimate, unit 2-norm.
std::vector<double> inverse_iteration(const Tridiagonal& op, double E);

/// || op x - E x || / (||op||_inf ||x||)
double relative_residual(const Tridiagonal& op, std::span<const double> x, double E);

/// Lowest n_levels levels below the dissociation threshold, Richardson
/// extrapolated. Flags (does not throw) when fewer levels exist.
SpectrumResult spectrum(const HamiltonianSpec& spec, const GridSpec& g, int n_levels);

/// Numerov shooting on the finest grid of `g`, matched at the outer
/// classical turning point.
double numerov_eigen(const HamiltonianSpec& spec, const GridSpec& g, int n, double tol);

/// Numerov shooting for an arbitrary tabulated potential with Dirichlet ends.
/// `potential` lives on grid.r; `threshold` bounds the energy search.
double numerov_eigen(const RadialGrid& grid, std::span<const double> potential, double mu, double hbar,
                     int n, double threshold, double tol);

/// Strict sign changes, ignoring |v| < 1e-12 max|v|.
int count_nodes(std::span<const double> samples);

} // namespace hua::oracle
