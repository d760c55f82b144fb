#include "hua/oracle.hpp"

#include "hua/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hua::oracle {

namespace {

std::pair<double, double> gershgorin(const Tridiagonal& op) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = op.diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0)
      radius += std::abs(op.off[i - 1]);
    if (i + 1 < n)
      radius += std::abs(op.off[i]);
    lo = std::min(lo, op.diag[i] - radius);
    hi = std::max(hi, op.diag[i] + radius);
  }
  return {lo, hi};
}

double inf_norm(const Tridiagonal& op) {
  auto [lo, hi] = gershgorin(op);
  return std::max(std::abs(lo), std::abs(hi));
}

// Solves (op - shift I) x = b by Gaussian elimination with partial pivoting.
std::vector<double> shifted_solve(const Tridiagonal& op, double shift, std::vector<double> b) {
  const std::size_t n = op.diag.size();
  std::vector<double> d(n), u1(n, 0.0), u2(n, 0.0), lower(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    d[i] = op.diag[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    u1[i] = op.off[i];
    lower[i] = op.off[i];
  }
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(inf_norm(op), 1.0);
  // row i holds (d[i], u1[i], u2[i]) in columns i, i+1, i+2 after elimination
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(lower[i]) > std::abs(d[i])) {
      // swap rows i and i+1
      const double nd = lower[i], nu1 = d[i + 1], nu2 = i + 1 < n - 1 ? u1[i + 1] : 0.0;
      const double od = d[i], ou1 = u1[i], ou2 = u2[i];
      d[i] = nd;
      u1[i] = nu1;
      u2[i] = nu2;
      std::swap(b[i], b[i + 1]);
      const double m = od / nd;
      d[i + 1] = ou1 - m * nu1;
      if (i + 1 < n - 1)
        u1[i + 1] = ou2 - m * nu2;
      b[i + 1] -= m * b[i];
    } else {
      if (d[i] == 0.0)
        d[i] = tiny;
      const double m = lower[i] / d[i];
      d[i + 1] -= m * u1[i];
      if (i + 1 < n - 1)
        u1[i + 1] -= m * u2[i];
      b[i + 1] -= m * b[i];
    }
  }
  if (d[n - 1] == 0.0)
    d[n - 1] = tiny;
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double acc = b[k];
    if (k + 1 < n)
      acc -= u1[k] * x[k + 1];
    if (k + 2 < n)
      acc -= u2[k] * x[k + 2];
    x[k] = acc / (std::abs(d[k]) < tiny ? std::copysign(tiny, d[k]) : d[k]);
  }
  return x;
}

void normalize(std::vector<double>& x) {
  double norm = 0.0;
  for (double v : x)
    norm += v * v;
  norm = std::sqrt(norm);
  for (double& v : x)
    v /= norm;
}

} // namespace

const char* domain_name(RadialDomain d) noexcept {
  return d == RadialDomain::Physical ? "Physical" : "Extended";
}

RadialGrid uniform_interior_grid(double left, double right, int n) {
  if (!(left < right) || n < 1)
    throw Error(Errc::InvalidRange, "grid needs left < right and n >= 1");
  RadialGrid g{left, right, (right - left) / (n + 1), {}};
  g.r.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    g.r[static_cast<std::size_t>(i)] = left + g.h * (i + 1);
  return g;
}

double domain_left(const HamiltonianSpec& spec) {
  if (spec.domain == RadialDomain::Physical)
    return 0.0;
  const double q = spec.params.q;
  if (!(q > 0.0 && q < 1.0))
    throw Error(Errc::ExtendedDomainInvalid, "extended domain needs 0 < q < 1, got q = " + std::to_string(q));
  if (spec.l != 0 && std::holds_alternative<ExactCentrifugal>(spec.scheme))
    throw Error(Errc::ExtendedDomainInvalid, "exact 1/r^2 is singular inside the extended domain");
  return std::log(q) / (2.0 * spec.params.alpha);
}

double spec_potential(double r, const HamiltonianSpec& spec) {
  const HuaParams& p = spec.params;
  const SystemConstants& c = spec.constants;
  if (spec.l == 0)
    return hua_potential(r, p);
  const double strength = c.hbar * c.hbar * spec.l * (spec.l + 1.0) / (2.0 * c.mu);
  return hua_potential(r, p) + strength * inverse_square(spec.scheme, r, p.alpha, p.q);
}

RadialGrid build_grid(const HamiltonianSpec& spec, const GridSpec& g) {
  const double left = domain_left(spec);
  return uniform_interior_grid(left, g.r_max_factor / spec.params.alpha, g.n_points);
}

Tridiagonal fd_operator(const RadialGrid& grid, std::span<const double> potential, double mu, double hbar) {
  const std::size_t n = grid.r.size();
  const double kinetic = hbar * hbar / (mu * grid.h * grid.h);
  Tridiagonal op{std::vector<double>(n), std::vector<double>(n > 0 ? n - 1 : 0, -0.5 * kinetic)};
  for (std::size_t i = 0; i < n; ++i)
    op.diag[i] = kinetic + potential[i];
  return op;
}

Tridiagonal fd_hamiltonian(const RadialGrid& grid, const HamiltonianSpec& spec) {
  std::vector<double> v(grid.r.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = spec_potential(grid.r[i], spec);
  return fd_operator(grid, v, spec.constants.mu, spec.constants.hbar);
}

int sturm_count(const Tridiagonal& op, double E) {
  const std::size_t n = op.diag.size();
  if (n == 0)
    return 0;
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, inf_norm(op));
  int count = 0;
  double d = op.diag[0] - E;
  for (std::size_t i = 0;;) {
    if (std::abs(d) < pivmin)
      d = -pivmin;
    if (d < 0.0)
      ++count;
    if (++i == n)
      break;
    d = (op.diag[i] - E) - op.off[i - 1] * op.off[i - 1] / d;
  }
  return count;
}

double eigen_bisect(const Tridiagonal& op, int k, double tol) {
  if (k < 0 || static_cast<std::size_t>(k) >= op.diag.size())
    throw Error(Errc::IndexOutOfRange, "eigenvalue index " + std::to_string(k) + " out of range");
  auto [lo, hi] = gershgorin(op);
  lo -= tol;
  hi += tol;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    if (sturm_count(op, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> inverse_iteration(const Tridiagonal& op, double E) {
  std::vector<double> x(op.diag.size(), 1.0);
  normalize(x);
  for (int it = 0; it < 3; ++it) {
    x = shifted_solve(op, E, x);
    normalize(x);
  }
  return x;
}

double relative_residual(const Tridiagonal& op, std::span<const double> x, double E) {
  const std::size_t n = op.diag.size();
  double res = 0.0, xn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double y = (op.diag[i] - E) * x[i];
    if (i > 0)
      y += op.off[i - 1] * x[i - 1];
    if (i + 1 < n)
      y += op.off[i] * x[i + 1];
    res += y * y;
    xn += x[i] * x[i];
  }
  return std::sqrt(res) / (inf_norm(op) * std::sqrt(xn));
}

SpectrumResult spectrum(const HamiltonianSpec& spec, const GridSpec& g, int n_levels) {
  validate_params(spec.params, spec.constants);
  if (n_levels < 1)
    throw Error(Errc::InvalidRange, "n_levels must be >= 1");
  if (g.n_points < 100 || g.refinement_levels < 1)
    throw Error(Errc::InvalidRange, "grid needs n_points >= 100 and refinement_levels >= 1");

  const double threshold = dissociation_threshold(spec.l, spec.scheme, spec.params, spec.constants);
  const double left = domain_left(spec);
  const double right = g.r_max_factor / spec.params.alpha;

  std::vector<Tridiagonal> ops;
  int available = n_levels;
  int n = g.n_points;
  for (int level = 0; level <= g.refinement_levels; ++level) {
    const RadialGrid grid = uniform_interior_grid(left, right, n);
    ops.push_back(fd_hamiltonian(grid, spec));
    available = std::min(available, sturm_count(ops.back(), threshold));
    n = 2 * n + 1;
  }

  SpectrumResult out;
  out.fewer_bound_states = available < n_levels;
  const double tol = 1e-13 * std::max(1.0, std::abs(threshold));
  for (int k = 0; k < available; ++k) {
    EigenResult res;
    res.index = k;
    for (const Tridiagonal& op : ops)
      res.grid_energies.push_back(eigen_bisect(op, k, tol));

    std::vector<double> extrap;
    for (std::size_t i = 0; i + 1 < res.grid_energies.size(); ++i)
      extrap.push_back((4.0 * res.grid_energies[i + 1] - res.grid_energies[i]) / 3.0);
    res.E = extrap.back();
    res.richardson_error = extrap.size() >= 2
                               ? std::abs(extrap.back() - extrap[extrap.size() - 2])
                               : std::abs(res.grid_energies.back() - res.grid_energies.front()) / 3.0;

    const Tridiagonal& finest = ops.back();
    const double e_fine = res.grid_energies.back();
    const std::vector<double> vec = inverse_iteration(finest, e_fine);
    res.residual = relative_residual(finest, vec, e_fine);
    res.nodes = count_nodes(vec);
    res.grid_points = static_cast<int>(finest.diag.size());
    out.levels.push_back(std::move(res));
  }
  return out;
}

int count_nodes(std::span<const double> samples) {
  double peak = 0.0;
  for (double v : samples)
    peak = std::max(peak, std::abs(v));
  const double floor = 1e-12 * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double v : samples) {
    if (std::abs(v) < floor || v == 0.0)
      continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign)
      ++nodes;
    last_sign = sign;
  }
  return nodes;
}

} // namespace hua::oracle
