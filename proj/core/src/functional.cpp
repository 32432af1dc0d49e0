#include "pmtlab/functional.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "pmtlab/finite_diff.hpp"
#include "pmtlab/quadrature.hpp"
#include "pmtlab/smoothing.hpp"

namespace pmt {

namespace {

double sphere_area(int n_minus_1) {
  // |S^k| = 2 pi^{(k+1)/2} / Gamma((k+1)/2)
  const double a = 0.5 * (n_minus_1 + 1);
  return 2.0 * std::pow(std::numbers::pi, a) / boost::math::tgamma(a);
}

}  // namespace

double sharp_sobolev_closed_form(int n) {
  return 4.0 / (n * (n - 2.0) * std::pow(sphere_area(n), 2.0 / n));
}

double bubble_quotient(int n, double p) {
  const double crit = 2.0 * n / (n - 2.0);
  boost::math::quadrature::exp_sinh<double> integrator;
  auto phi_pow = [&](double r) {
    if (r == 0.0) return 0.0;
    return std::exp(-p * crit * std::log1p(r * r) + (n - 1) * std::log(r));
  };
  auto grad_sq = [&](double r) {
    if (r == 0.0) return 0.0;
    return 4.0 * p * p * std::exp((-2.0 * p - 2.0) * std::log1p(r * r) + (n + 1) * std::log(r));
  };
  const double area = sphere_area(n - 1);
  const double lp = area * integrator.integrate(phi_pow, 0.0, std::numeric_limits<double>::infinity());
  const double g2 = area * integrator.integrate(grad_sq, 0.0, std::numeric_limits<double>::infinity());
  return std::pow(lp, 2.0 / crit) / g2;
}

BubbleMaximum maximise_bubble_quotient(int n) {
  // Both integrals converge for p > (n - 2) / 4.
  const double lo = 0.26 * (n - 2.0), hi = 1.5 * (n - 2.0);
  const auto best = boost::math::tools::brent_find_minima(
      [n](double p) { return -bubble_quotient(n, p); }, lo, hi, 40);
  return {best.first, -best.second};
}

Constants Constants::make(int n) { return with_sobolev(maximise_bubble_quotient(n).quotient, n); }

Constants Constants::with_sobolev(double sobolev, int n) {
  if (n < 3) throw Rejection("Constants: dimension must be at least 3");
  Constants c;
  c.n = n;
  c.c_n = (n - 2.0) / (4.0 * (n - 1.0));
  c.omega = sphere_area(n - 1);
  c.sobolev = sobolev;
  return c;
}

double distributional_pairing(const ScalarField& s, const TestFunction& phi, const MetricField& g) {
  const Grid& grid = phi.values.grid();
  const int n = grid.nodes(), m = phi.margin;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const bool in_margin = i < m || j < m || k < m || i >= n - m || j >= n - m || k >= n - m;
        if (in_margin && phi.values(i, j, k) != 0.0)
          throw Rejection("distributional_pairing: test function not supported away from the margin at " +
                          grid.describe(i, j, k));
      }
  return integrate(
      grid,
      [&](int i, int j, int k) {
        const double p = phi.values(i, j, k);
        return s(i, j, k) * p * p;
      },
      &g, Region::all());
}

double radial_bump(const Vec3& x, const Vec3& center, double width) {
  return 1.0 - smoothstep(norm(x - center) / width);
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::vector<TestFunction> test_function_corpus(const Grid& grid, std::uint64_t seed, int count, int margin) {
  std::vector<TestFunction> out;
  const Grid g1 = grid.with_ghost(1);
  const double rk = grid.compact_radius();
  for (double width : {0.5 * rk, rk, 1.5 * rk}) {
    out.push_back({sample([=](const Vec3& x) { return radial_bump(x, {0, 0, 0}, width); }, g1), margin});
  }
  std::mt19937_64 rng(seed);
  auto uni = [&](double a, double b) { return a + (b - a) * unit_uniform(rng()); };
  for (int c = 0; c < count; ++c) {
    struct Term {
      Vec3 center;
      double width, amplitude;
    };
    std::vector<Term> terms;
    for (int q = 0; q < 3; ++q) {
      Vec3 ctr;
      do {
        ctr = {uni(-rk, rk), uni(-rk, rk), uni(-rk, rk)};
      } while (norm(ctr) > rk);
      terms.push_back({ctr, uni(0.25 * rk, rk), uni(-1.0, 1.0)});
    }
    out.push_back({sample(
                       [terms](const Vec3& x) {
                         double v = 0.0;
                         for (const auto& t : terms) v += t.amplitude * radial_bump(x, t.center, t.width);
                         return v;
                       },
                       g1),
                   margin});
  }
  return out;
}

double rayleigh_quotient(const ScalarField& phi, const MetricField& g) {
  const Grid interior = phi.grid().with_ghost(0);
  const MetricField g0 = regrid(g, interior);
  const double l6 = lp_norm(regrid(phi, interior), 6.0, g0, Region::all());
  const ScalarField grad = gradient_norm_sq(phi, regrid(g, phi.grid()));
  const double dirichlet = integrate(
      interior, [&](int i, int j, int k) { return grad(i, j, k); }, &g0, Region::all());
  return l6 * l6 / dirichlet;
}

double sobolev_upper_bound(const MetricField& g, const Constants& constants) {
  MetricField flat_metric(g.grid(), Sym3::identity());
  const double rho_flat = equivalence_rho(g, flat_metric);
  if (!std::isfinite(rho_flat)) throw Rejection("sobolev_upper_bound: metric degenerate");
  return std::pow(rho_flat, constants.n) * constants.sobolev;
}

SyCondition sy_condition(double c1_upper, double sminus_norm, const Constants& constants) {
  if (c1_upper < 0.0 || sminus_norm < 0.0) throw Rejection("sy_condition: inputs must be non-negative");
  const double value = constants.c_n * c1_upper * sminus_norm;
  return {value, value <= 0.5};
}

}  // namespace pmt
