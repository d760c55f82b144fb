#include "hua/error.hpp"
#include "hua/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace hua::oracle {

namespace {

constexpr double kRescale = 1e150;

// u'' = g u with g = (2 mu / hbar^2)(V - E), nodes 0..N+1 with u = 0 at both
// ends. Points deep inside a singular wall, where h^2 |g| / 12 >= 1/2, are
// treated as part of the wall.
class Shooter {
public:
  Shooter(const RadialGrid& grid, std::span<const double> potential, double mu, double hbar)
      : h2_(grid.h * grid.h), scale_(2.0 * mu / (hbar * hbar)), v_(potential.begin(), potential.end()) {}

  std::size_t size() const noexcept { return v_.size(); }

  // First usable interior index.
  std::size_t start(double E) const {
    std::size_t i = 0;
    while (i + 4 < v_.size() && h2_ * std::abs(scale_ * (v_[i] - E)) / 12.0 >= 0.5)
      ++i;
    return i;
  }

  // Outer classical turning point, kept away from the ends.
  std::size_t turning_point(double E) const {
    std::size_t m = 0;
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (v_[i] < E)
        m = i;
    const std::size_t lo = start(E) + 2;
    const std::size_t hi = v_.size() - 3;
    return std::clamp(m, lo, hi);
  }

  // Outward solution on [start, last]; entries before start are zero.
  std::vector<double> outward(double E, std::size_t last) const {
    std::vector<double> u(v_.size(), 0.0);
    const std::size_t s = start(E);
    u[s] = 1e-30;
    double prev = 0.0; // value at s - 1 (wall or Dirichlet end)
    for (std::size_t i = s; i < last; ++i) {
      const double fi = f(i, E);
      const double fm = i > s ? f(i - 1, E) : 1.0;
      const double fp = f(i + 1, E);
      const double um = i > s ? u[i - 1] : prev;
      u[i + 1] = ((12.0 - 10.0 * fi) * u[i] - fm * um) / fp;
      if (std::abs(u[i + 1]) > kRescale)
        for (std::size_t j = s; j <= i + 1; ++j)
          u[j] /= kRescale;
    }
    return u;
  }

  // Inward solution on [first, N-1].
  std::vector<double> inward(double E, std::size_t first) const {
    const std::size_t n = v_.size();
    std::vector<double> u(n, 0.0);
    u[n - 1] = 1e-30;
    for (std::size_t i = n - 1; i > first; --i) {
      const double fi = f(i, E);
      const double fp = i + 1 < n ? f(i + 1, E) : 1.0;
      const double up = i + 1 < n ? u[i + 1] : 0.0;
      const double fm = f(i - 1, E);
      u[i - 1] = ((12.0 - 10.0 * fi) * u[i] - fp * up) / fm;
      if (std::abs(u[i - 1]) > kRescale)
        for (std::size_t j = i - 1; j < n; ++j)
          u[j] /= kRescale;
    }
    return u;
  }

  // Sign changes of the outward solution over the whole grid: the number of
  // Dirichlet eigenvalues below E.
  int count_below(double E) const {
    const std::vector<double> u = outward(E, v_.size() - 1);
    int nodes = 0;
    int last = 0;
    for (double x : u) {
      if (x == 0.0)
        continue;
      const int sgn = x > 0.0 ? 1 : -1;
      if (last != 0 && sgn != last)
        ++nodes;
      last = sgn;
    }
    // crossing zero exactly at the right end counts as the next eigenvalue
    const double tail = u.back();
    const double right_end = ((12.0 - 10.0 * f(v_.size() - 1, E)) * tail - f(v_.size() - 2, E) * u[v_.size() - 2]);
    const int end_sign = right_end > 0.0 ? 1 : (right_end < 0.0 ? -1 : 0);
    if (end_sign != 0 && last != 0 && end_sign != last)
      ++nodes;
    return nodes;
  }

  // Log-derivative mismatch at m.
  double mismatch(double E, std::size_t m) const {
    const std::vector<double> uo = outward(E, m + 1);
    const std::vector<double> ui = inward(E, m - 1);
    if (uo[m] == 0.0 || ui[m] == 0.0)
      throw Error(Errc::MatchFailure, "solution vanishes at the matching point");
    const double lo = (uo[m + 1] - uo[m - 1]) / uo[m];
    const double li = (ui[m + 1] - ui[m - 1]) / ui[m];
    return lo - li;
  }

private:
  double f(std::size_t i, double E) const { return 1.0 - h2_ * scale_ * (v_[i] - E) / 12.0; }

  double h2_;
  double scale_;
  std::vector<double> v_;
};

} // namespace

double numerov_eigen(const RadialGrid& grid, std::span<const double> potential, double mu, double hbar,
                     int n, double threshold, double tol) {
  const Shooter shooter(grid, potential, mu, hbar);
  if (n < 0 || shooter.count_below(threshold) <= n)
    throw Error(Errc::NoBoundState, "fewer than " + std::to_string(n + 1) + " levels below threshold");

  double lo = *std::min_element(potential.begin(), potential.end());
  double hi = threshold;
  if (shooter.count_below(lo) > n)
    throw Error(Errc::MatchFailure, "node count inconsistent at the potential minimum");

  // bracket the level by node count
  const double coarse = 1e-9 * std::max(1.0, std::abs(threshold));
  while (hi - lo > coarse) {
    const double mid = 0.5 * (lo + hi);
    if (shooter.count_below(mid) > n)
      hi = mid;
    else
      lo = mid;
  }

  // refine on the matching condition
  const std::size_t m = shooter.turning_point(0.5 * (lo + hi));
  double f_lo = shooter.mismatch(lo, m);
  const double f_hi = shooter.mismatch(hi, m);
  if ((f_lo < 0.0) == (f_hi < 0.0))
    return 0.5 * (lo + hi);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    const double f_mid = shooter.mismatch(mid, m);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double numerov_eigen(const HamiltonianSpec& spec, const GridSpec& g, int n, double tol) {
  validate_params(spec.params, spec.constants);
  int points = g.n_points;
  for (int i = 0; i < g.refinement_levels; ++i)
    points = 2 * points + 1;
  const RadialGrid grid = uniform_interior_grid(domain_left(spec), g.r_max_factor / spec.params.alpha, points);
  std::vector<double> v(grid.r.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = spec_potential(grid.r[i], spec);
  const double threshold = dissociation_threshold(spec.l, spec.scheme, spec.params, spec.constants);
  return numerov_eigen(grid, v, spec.constants.mu, spec.constants.hbar, n, threshold, tol);
}

} // namespace hua::oracle
