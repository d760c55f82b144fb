#include "check.hpp"

#include "hua/analytic.hpp"
#include "hua/oracle.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <vector>

using namespace hua;
using namespace hua::analytic;

namespace {

const SystemConstants kUnit{1.0, 1.0};
constexpr double kC0 = 1.0 / 12.0;

// generalized binomial C(x, k)
double binom(double x, int k) { return std::tgamma(x + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(x - k + 1.0)); }

// explicit sum that follows from expanding the Rodrigues formula
double jacobi_rodrigues(int n, double a, double b, double x) {
  double sum = 0.0;
  for (int s = 0; s <= n; ++s)
    sum += binom(n + a, n - s) * binom(n + b, s) * std::pow(0.5 * (x - 1.0), s) * std::pow(0.5 * (x + 1.0), n - s);
  return sum;
}

std::vector<double> odd_grid(double left, double right, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] = left + (right - left) * i / (n - 1);
  return g;
}

} // namespace

TEST_CASE("variant names round-trip") {
  for (SpectrumVariant v : kAllVariants)
    CHECK(parse_variant(variant_name(v)) == v);
  CHECK_FALSE(parse_variant("GA").has_value());
  CHECK(is_pekeris(SpectrumVariant::Pekeris_AsPrinted));
  CHECK_FALSE(is_pekeris(SpectrumVariant::GA_Rederived));
}

// Worked example -0.5 s^2 + 4 s - 2; the stated polynomial gives -2 s^2 at eps = 0.
TEST_CASE("GA problem literal worked example" * doctest::may_fail()) {
  const nu::HypergeometricProblem p = build_problem_ga({0.0, 2.0, 0.0}, 0.5);
  CHECK(p.sigma_tilde.c2 == doctest::Approx(-0.5));
  CHECK(p.sigma_tilde.c1 == doctest::Approx(4.0));
  CHECK(p.sigma_tilde.c0 == doctest::Approx(-2.0));
}

TEST_CASE("GA problem coefficients") {
  const nu::HypergeometricProblem p = build_problem_ga({0.0, 2.0, 0.0}, 0.5);
  // -(eps q^2 + beta)
  CHECK(p.sigma_tilde.c2 == doctest::Approx(-2.0));
  CHECK(p.sigma_tilde.c1 == doctest::Approx(4.0));
  CHECK(p.sigma_tilde.c0 == doctest::Approx(-2.0));

  const nu::HypergeometricProblem g = build_problem_ga({0.0, 2.0, 6.0}, 0.5);
  CHECK(g.sigma_tilde.c1 - p.sigma_tilde.c1 == doctest::Approx(-6.0));
  CHECK(g.sigma_tilde.c0 == p.sigma_tilde.c0);
  CHECK(g.sigma_tilde.c2 == p.sigma_tilde.c2);

  const nu::HypergeometricProblem o = build_problem_ga({3.0, 7.0, 2.0}, 0.5);
  CHECK(o.tau_tilde.c0 == p.tau_tilde.c0);
  CHECK(o.tau_tilde.c1 == p.tau_tilde.c1);
  CHECK(o.sigma.c0 == p.sigma.c0);
  CHECK(o.sigma.c1 == p.sigma.c1);
  CHECK(o.sigma.c2 == p.sigma.c2);
  CHECK(p.tau_tilde.c0 == 1.0);
  CHECK(p.tau_tilde.c1 == -0.5);
  CHECK(p.sigma.c1 == 1.0);
  CHECK(p.sigma.c2 == -0.5);
}

TEST_CASE("Pekeris problem coefficients") {
  const DimensionlessParams d0{-1.3, 4.0, 0.0};
  const auto ga = build_problem_ga(d0, 0.4);
  for (double c0 : {0.0, kC0, 0.7}) {
    const auto pk = build_problem_pekeris(d0, 0.4, c0);
    CHECK(pk.sigma_tilde.c0 == ga.sigma_tilde.c0);
    CHECK(pk.sigma_tilde.c1 == ga.sigma_tilde.c1);
    CHECK(pk.sigma_tilde.c2 == ga.sigma_tilde.c2);
  }

  const double e = -1.3, b = 4.0, g = 6.0, q = 0.4, c0 = 0.2;
  const auto pk = build_problem_pekeris({e, b, g}, q, c0);
  CHECK(pk.sigma_tilde.c2 == doctest::Approx(-(e * q * q + b + g * c0 * q * q + g * (1.0 - q))));
  CHECK(pk.sigma_tilde.c1 == doctest::Approx(2.0 * e * q + 2.0 * b + 2.0 * g * c0 * q - g));
  CHECK(pk.sigma_tilde.c0 == doctest::Approx(-(e + b + g * c0)));
}

TEST_CASE("zeta") {
  const DimensionlessParams d{0.0, 2.0, 0.0};
  CHECK(zeta(0, d, 0.5, SpectrumVariant::GA_Rederived, kC0) == doctest::Approx(2.0).epsilon(1e-15));

  for (double beta : {0.5, 2.0, 20.0, 80.0})
    for (double q : {-0.5, 0.3, 0.5, 0.9})
      for (int n : {0, 1, 4}) {
        const DimensionlessParams dd{0.0, beta, 0.0};
        const double as_printed = zeta(n, dd, q, SpectrumVariant::GA_AsPrinted, kC0);
        CHECK(as_printed == doctest::Approx(zeta(n, dd, q, SpectrumVariant::GA_Rederived, kC0)).epsilon(1e-12));
      }

  CHECK_ERRC(zeta(0, {0.0, 0.0, 6.0}, 0.5, SpectrumVariant::GA_AsPrinted, kC0), Errc::NegativeRadicand);
}

TEST_CASE("variants collapse near q = 1 without a barrier") {
  const double q = 0.999999;
  for (double beta : {2.0, 20.0}) {
    const DimensionlessParams d{0.0, beta, 0.0};
    const double ref = zeta(0, d, q, SpectrumVariant::GA_Rederived, kC0);
    for (SpectrumVariant v : kAllVariants)
      CHECK(std::abs(zeta(0, d, q, v, kC0) - ref) <= 1e-4);
  }
}

// The printed radicands keep gamma/q or gamma/q^2 with different weights, so
// at gamma > 0 they do not meet as q -> 1.
TEST_CASE("variants collapse near q = 1 with a barrier" * doctest::may_fail()) {
  const double q = 0.999999;
  for (double gamma : {2.0, 6.0}) {
    const DimensionlessParams d{0.0, 20.0, gamma};
    const double ref = zeta(0, d, q, SpectrumVariant::GA_Rederived, kC0);
    for (SpectrumVariant v : kAllVariants)
      CHECK_MESSAGE(std::abs(zeta(0, d, q, v, kC0) - ref) <= 1e-4, std::string(variant_name(v)));
  }
}

TEST_CASE("energy levels") {
  const HuaParams p{1.0, 0.5, 0.5};
  const EnergyLevel e = energy_level(p, kUnit, 0, 0, SpectrumVariant::GA_Rederived, kC0);
  CHECK(e.E == doctest::Approx(0.875).epsilon(1e-15));
  CHECK(e.zeta == doctest::Approx(2.0));
  CHECK(e.epsilon == doctest::Approx(-1.75));
  CHECK_ERRC(energy_level(p, kUnit, 1, 0, SpectrumVariant::GA_Rederived, kC0), Errc::NoBoundState);

  for (const HuaParams& pp : {HuaParams{10.0, 0.25, 0.5}, HuaParams{5.0, 0.5, 0.3}, HuaParams{20.0, 0.5, 0.9}}) {
    const int count = max_level_count(pp, kUnit, 0, SpectrumVariant::GA_Rederived, kC0);
    REQUIRE(count > 0);
    for (int n = 0; n < count; ++n) {
      const double ga = energy_level(pp, kUnit, n, 0, SpectrumVariant::GA_Rederived, kC0).E;
      const double pk = energy_level(pp, kUnit, n, 0, SpectrumVariant::Pekeris_Rederived, kC0).E;
      const double ap = energy_level(pp, kUnit, n, 0, SpectrumVariant::GA_AsPrinted, kC0).E;
      CHECK(std::abs(ga - pk) <= 1e-12 * ga);
      CHECK(std::abs(ga - ap) <= 1e-12 * ga);
    }
  }
}

// Pekeris_AsPrinted keeps the bracket beta (1/q - 1), which differs from the
// other three at gamma = 0 too.
TEST_CASE("l = 0 collapse across all four variants" * doctest::may_fail()) {
  const HuaParams p{10.0, 0.25, 0.5};
  const double ref = energy_level(p, kUnit, 0, 0, SpectrumVariant::GA_Rederived, kC0).E;
  for (SpectrumVariant v : kAllVariants) {
    double E = 0.0;
    try {
      E = energy_level(p, kUnit, 0, 0, v, kC0).E;
    } catch (const Error& e) {
      FAIL_CHECK(std::string(variant_name(v)) << ": " << std::string(e.what()));
      continue;
    }
    CHECK_MESSAGE(std::abs(E - ref) <= 1e-12, std::string(variant_name(v)));
  }
}

TEST_CASE("level counts") {
  CHECK(max_level_count({1.0, 0.5, 0.5}, kUnit, 0, SpectrumVariant::GA_Rederived, kC0) == 1);
  CHECK(max_level_count({0.01, 0.5, 0.5}, kUnit, 0, SpectrumVariant::GA_Rederived, kC0) == 0);
  int last = 0;
  for (double v1 : {1.0, 5.0, 10.0, 40.0, 160.0, 640.0}) {
    const int c = max_level_count({v1, 0.5, 0.5}, kUnit, 0, SpectrumVariant::GA_Rederived, kC0);
    CHECK(c >= last);
    last = c;
  }
  CHECK(last > 1);
}

TEST_CASE("spectrum ordering") {
  for (SpectrumVariant v : kAllVariants)
    for (int l = 0; l <= 2; ++l) {
      const HuaParams p{20.0, 0.25, 0.5};
      const int count = max_level_count(p, kUnit, l, v, kC0);
      for (int n = 1; n < count; ++n)
        CHECK(energy_level(p, kUnit, n, l, v, kC0).E > energy_level(p, kUnit, n - 1, l, v, kC0).E);
    }
}

TEST_CASE("closed forms agree with the engine") {
  int compared = 0;
  for (double v1 : {1.0, 10.0, 40.0})
    for (double q : {-0.5, 0.3, 0.5, 0.9})
      for (int l = 0; l <= 2; ++l)
        for (SpectrumVariant v : {SpectrumVariant::GA_Rederived, SpectrumVariant::Pekeris_Rederived}) {
          const HuaParams p{v1, 0.5, q};
          const int count = max_level_count(p, kUnit, l, v, kC0);
          for (int n = 0; n < count; ++n) {
            const double closed = energy_level(p, kUnit, n, l, v, kC0).epsilon;
            const double engine = engine_energy_level(p, kUnit, n, l, v, kC0).epsilon;
            CHECK(std::abs(closed - engine) <= 1e-9 * std::abs(closed));
            ++compared;
          }
        }
  CHECK(compared > 20);
}

TEST_CASE("jacobi polynomials") {
  CHECK(jacobi_eval(0, 0.3, 1.7, -0.4) == 1.0);
  CHECK(jacobi_eval(1, 1.0, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));

  const double a = 0.7, b = 1.3;
  const double endpoint = std::tgamma(4 + a + 1.0) / (24.0 * std::tgamma(a + 1.0));
  CHECK(jacobi_eval(4, a, b, 1.0) == doctest::Approx(endpoint).epsilon(1e-13));

  for (int n = 0; n <= 3; ++n)
    for (double x : {-1.0, -0.6, 0.0, 0.25, 0.9, 1.0})
      for (double aa : {-0.5, 0.0, 2.3})
        for (double bb : {-0.3, 1.0, 4.1})
          CHECK(jacobi_eval(n, aa, bb, x) == doctest::Approx(jacobi_rodrigues(n, aa, bb, x)).epsilon(1e-12));
}

TEST_CASE("jacobi orthogonality") {
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{0.7, 1.3}, std::pair{-0.5, 2.5}, std::pair{3.0, 9.0}}) {
    const auto inner = [&](int m, int n) {
      // xc is the distance to the nearer endpoint, exact near +-1
      const auto f = [&](double x, double xc) {
        const double one_minus = x > 0.0 ? xc : 1.0 - x;
        const double one_plus = x < 0.0 ? -xc : 1.0 + x;
        return std::pow(one_minus, a) * std::pow(one_plus, b) * jacobi_eval(m, a, b, x) * jacobi_eval(n, a, b, x);
      };
      return integrator.integrate(f, -1.0, 1.0, 1e-14);
    };
    for (int m = 0; m <= 4; ++m)
      for (int n = m + 1; n <= 4; ++n) {
        const double diag = std::sqrt(inner(m, m) * inner(n, n));
        CHECK(std::abs(inner(m, n)) <= 1e-8 * diag);
      }
  }
}

TEST_CASE("wavefunction form") {
  const HuaParams p{1.0, 0.5, 0.5};
  const WavefunctionForm f = wavefunction_form(p, kUnit, 0, 0, SpectrumVariant::GA_Rederived, kC0);
  CHECK(f.A == doctest::Approx(0.5));
  CHECK(f.B == doctest::Approx(2.0));
  CHECK(f.jacobi_a == doctest::Approx(1.0));
  CHECK(f.jacobi_b == doctest::Approx(3.0));
  CHECK_ERRC(wavefunction_form(p, kUnit, 1, 0, SpectrumVariant::GA_Rederived, kC0), Errc::NoBoundState);

  // n = 0: R = N s^A (1 - q s)^B
  const double r = 0.8, s = std::exp(-2.0 * p.alpha * r);
  CHECK(wavefunction_value(f, p, r) == doctest::Approx(std::pow(s, f.A) * std::pow(1.0 - p.q * s, f.B)));

  // Jacobi argument 1 - 2 q s
  const HuaParams deep{10.0, 0.25, 0.5};
  const WavefunctionForm f2 = wavefunction_form(deep, kUnit, 2, 1, SpectrumVariant::GA_Rederived, kC0);
  const double s2 = std::exp(-2.0 * deep.alpha * r);
  const double expect = std::pow(s2, f2.A) * std::pow(1.0 - deep.q * s2, f2.B) *
                        jacobi_eval(2, f2.jacobi_a, f2.jacobi_b, 1.0 - 2.0 * deep.q * s2);
  CHECK(wavefunction_value(f2, deep, r) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("wavefunction exponents match the engine") {
  for (double v1 : {1.0, 10.0, 40.0})
    for (double q : {0.3, 0.5, 0.9})
      for (int l = 0; l <= 2; ++l)
        for (SpectrumVariant v : {SpectrumVariant::GA_Rederived, SpectrumVariant::Pekeris_Rederived}) {
          const HuaParams p{v1, 0.5, q};
          const int count = max_level_count(p, kUnit, l, v, kC0);
          for (int n = 0; n < count; ++n) {
            const WavefunctionForm f = wavefunction_form(p, kUnit, n, l, v, kC0);
            const EnergyLevel e = energy_level(p, kUnit, n, l, v, kC0);
            const DimensionlessParams d = to_dimensionless(p, kUnit, e.E, l);
            const nu::NUDerivation dv =
                nu::derive(is_pekeris(v) ? build_problem_pekeris(d, q, kC0) : build_problem_ga(d, q));
            CHECK(std::abs(f.A - dv.phi_exponents[0]) <= 1e-9 * std::max(1.0, f.A));
            CHECK(std::abs(f.B - dv.phi_exponents[1]) <= 1e-9 * std::max(1.0, f.B));
            CHECK(std::abs(f.jacobi_a - dv.rho_exponents[0]) <= 1e-9 * std::max(1.0, f.jacobi_a));
            CHECK(std::abs(f.jacobi_b - dv.rho_exponents[1]) <= 1e-9 * std::max(1.0, f.jacobi_b));
          }
        }
}

TEST_CASE("radial samples") {
  const HuaParams p{10.0, 0.25, 0.5};
  const int count = max_level_count(p, kUnit, 1, SpectrumVariant::GA_Rederived, kC0);
  REQUIRE(count >= 3);
  for (int n = 0; n < count; ++n) {
    const WavefunctionForm f = wavefunction_form(p, kUnit, n, 1, SpectrumVariant::GA_Rederived, kC0);
    const std::vector<double> grid = wavefunction_grid(f, p, 40001);
    const WavefunctionSamples w = radial_wavefunction_samples(f, p, grid);
    CHECK(oracle::count_nodes(w.R) == n);

    std::vector<double> sq(w.R.size());
    for (std::size_t i = 0; i < sq.size(); ++i)
      sq[i] = w.R[i] * w.R[i];
    CHECK(simpson(sq, grid[1] - grid[0]) == doctest::Approx(1.0).epsilon(1e-8));

    // positive tail decaying like s^A
    std::size_t last = w.R.size() - 1;
    while (last > 0 && std::abs(w.R[last]) < 1e-200)
      --last;
    CHECK(w.R[last / 2 + last / 4] > 0.0);
    const double r1 = 60.0, r2 = 70.0;
    const double ratio = wavefunction_value(w.form, p, r2) / wavefunction_value(w.form, p, r1);
    CHECK(ratio == doctest::Approx(std::exp(-2.0 * p.alpha * f.A * (r2 - r1))).epsilon(1e-6));
  }

  const WavefunctionForm f = wavefunction_form(p, kUnit, 0, 0, SpectrumVariant::GA_Rederived, kC0);
  const std::vector<double> short_grid = odd_grid(0.0, 5.0, 101);
  CHECK_ERRC(radial_wavefunction_samples(f, p, short_grid), Errc::GridTooShort);
}

TEST_CASE("simpson") {
  std::vector<double> v(101);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = static_cast<double>(i) / 100.0;
    v[i] = x * x * x;
  }
  CHECK(simpson(v, 0.01) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_ERRC(simpson(std::vector<double>(4, 1.0), 0.1), Errc::InvalidRange);
}
