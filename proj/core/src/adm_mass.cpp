#include "pmtlab/adm_mass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pmtlab/curvature.hpp"
#include "pmtlab/finite_diff.hpp"
#include "pmtlab/parallel.hpp"
#include "pmtlab/quadrature.hpp"
#include "pmtlab/sphere.hpp"

namespace pmt {

namespace {

// P_i = d_j g_ij - d_i g_jj at a node, with centered differences of order 2
// or 4.
Vec3 mass_vector(const MetricField& g, int i, int j, int k, int order) {
  const double h = g.grid().spacing();
  std::array<Sym3, 3> dg;
  for (int d = 0; d < 3; ++d) {
    auto at = [&](int m) -> const Sym3& { return g(i + m * (d == 0), j + m * (d == 1), k + m * (d == 2)); };
    dg[static_cast<std::size_t>(d)] = order == 4 ? (1.0 / (12.0 * h)) * (8.0 * (at(1) - at(-1)) - (at(2) - at(-2)))
                                                 : (0.5 / h) * (at(1) - at(-1));
  }
  Vec3 p{};
  for (int a = 0; a < 3; ++a) {
    double s = 0.0;
    for (int b = 0; b < 3; ++b) s += dg[static_cast<std::size_t>(b)](a, b) - dg[static_cast<std::size_t>(a)](b, b);
    p[static_cast<std::size_t>(a)] = s;
  }
  return p;
}

// Cubic Lagrange weights on nodes -1, 0, 1, 2 at fractional offset f.
std::array<double, 4> cubic_weights(double f) {
  return {-f * (f - 1.0) * (f - 2.0) / 6.0, (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0,
          -(f + 1.0) * f * (f - 2.0) / 2.0, (f + 1.0) * f * (f - 1.0) / 6.0};
}

Vec3 tricubic_mass_vector(const MetricField& g, const Vec3& x, int order) {
  const Grid& grid = g.grid();
  const double h = grid.spacing();
  int base[3];
  std::array<std::array<double, 4>, 3> w;
  for (int d = 0; d < 3; ++d) {
    const double s = (x[d] + grid.extent()) / h;
    base[d] = static_cast<int>(std::floor(s));
    w[static_cast<std::size_t>(d)] = cubic_weights(s - base[d]);
  }
  Vec3 acc{};
  for (int c = 0; c < 4; ++c)
    for (int b = 0; b < 4; ++b)
      for (int a = 0; a < 4; ++a) {
        const double wt = w[0][static_cast<std::size_t>(a)] * w[1][static_cast<std::size_t>(b)] *
                          w[2][static_cast<std::size_t>(c)];
        acc = acc + wt * mass_vector(g, base[0] + a - 1, base[1] + b - 1, base[2] + c - 1, order);
      }
  return acc;
}

}  // namespace

double adm_shell(const MetricField& g, double radius, int order) {
  if (order != 2 && order != 4) throw Rejection("adm_shell: order must be 2 or 4");
  const Grid& grid = g.grid();
  const double h = grid.spacing();
  const int reach = order / 2;
  const int hi = static_cast<int>(std::floor((radius + grid.extent()) / h)) + 2 + reach;
  const int lo = static_cast<int>(std::floor((grid.extent() - radius) / h)) - 1 - reach;
  if (!grid.holds(lo, lo, lo) || !grid.holds(hi, hi, hi))
    throw Rejection("adm_mass: shell " + std::to_string(radius) + " needs nodes beyond the stored ghost layers");
  const SpherePoints& sp = SpherePoints::standard();
  const std::size_t count = sp.directions.size();
  const int chunks = 16;
  const double total = reduce_slabs(0, chunks, [&](int c, CompensatedSum& acc) {
    for (std::size_t q = static_cast<std::size_t>(c); q < count; q += chunks) {
      const Vec3& nu = sp.directions[q];
      const Vec3 x = radius * nu;
      const Vec3 p = tricubic_mass_vector(g, x, order);
      acc.add(sp.weights[q] * dot(p, nu));
    }
  });
  return radius * radius * total / (16.0 * std::numbers::pi);
}

MassEstimate adm_mass(const MetricField& g, std::span<const double> radii) {
  const Grid& grid = g.grid();
  if (radii.empty()) throw Rejection("adm_mass: no extraction radii");
  const double lo = grid.compact_radius() * 1.25;
  const double hi = grid.extent() - 2.0 * grid.spacing();
  for (const double r : radii)
    if (!(r > lo && r < hi))
      throw Rejection("adm_mass: radius " + std::to_string(r) + " outside (" + std::to_string(lo) + ", " +
                      std::to_string(hi) + ")");
  MassEstimate est;
  est.radii_used.assign(radii.begin(), radii.end());
  std::vector<double> coarse;
  for (const double r : radii) {
    est.shell_values.push_back(adm_shell(g, r, 4));
    coarse.push_back(adm_shell(g, r, 2));
  }
  est.value = extrapolate_inverse_radius(radii, est.shell_values);
  const double coarse_value = extrapolate_inverse_radius(radii, coarse);
  est.truncation_error = std::abs(coarse_value - est.value);
  if (radii.size() >= 3) {
    std::vector<std::size_t> order(radii.size());
    for (std::size_t a = 0; a < order.size(); ++a) order[a] = a;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return radii[a] < radii[b]; });
    std::vector<double> r_out, v_out;
    for (std::size_t a = 1; a < order.size(); ++a) {
      r_out.push_back(radii[order[a]]);
      v_out.push_back(est.shell_values[order[a]]);
    }
    est.extrapolation_error = std::abs(extrapolate_inverse_radius(r_out, v_out) - est.value);
  } else if (radii.size() == 2) {
    const std::size_t outer = radii[0] > radii[1] ? 0 : 1;
    est.extrapolation_error = std::abs(est.value - est.shell_values[outer]);
  } else {
    est.extrapolation_error = std::abs(est.value);
  }
  return est;
}

MassDefect mass_defect(const ConformalSolution& sol, const ScalarField& sminus, const MetricField& g,
                       const Constants& constants) {
  const Grid& grid = sol.u.grid();
  const MetricField gm = regrid(g, grid);
  const ScalarField grad = gradient_norm_sq(sol.u, gm);
  const double integral = integrate(
      grid,
      [&](int i, int j, int k) {
        const double u = sol.u(i, j, k);
        return grad(i, j, k) - constants.c_n * sminus(i, j, k) * u * u;
      },
      &gm, Region::all());
  const double factor = (constants.n - 1) / ((constants.n - 2) * constants.omega);
  MassDefect out;
  out.value = factor * integral;
  out.tail_bound = factor * constants.omega * sol.A * sol.A / grid.extent();
  return out;
}

MetricField conformal_metric(const ScalarField& u, const MetricField& g) {
  const Grid& grid = u.grid();
  if (!grid.same_nodes(g.grid()) || g.grid().ghost() < grid.ghost())
    throw Rejection("conformal_metric: grids differ");
  MetricField out(grid);
  const int lo = -grid.ghost(), hi = grid.nodes() + grid.ghost();
  for_each_slab(lo, hi, [&](int k) {
    for (int j = lo; j < hi; ++j)
      for (int i = lo; i < hi; ++i) {
        const double v = u(i, j, k);
        const double v2 = v * v;
        out(i, j, k) = (v2 * v2) * g(i, j, k);
      }
  });
  return out;
}

ConformalMass conformal_mass(const ConformalSolution& sol, const MetricField& g, const ScalarField& s_g,
                             std::span<const double> radii, double tol_curv) {
  const MetricField ghat = conformal_metric(sol.u, g);
  ConformalMass out{adm_mass(ghat, radii), scalar_curvature_conformal(sol.u, &s_g, regrid(g, sol.u.grid()))};
  const int n = sol.u.grid().nodes();
  double m = std::numeric_limits<double>::infinity();
  for (int k = 1; k < n - 1; ++k)
    for (int j = 1; j < n - 1; ++j)
      for (int i = 1; i < n - 1; ++i) m = std::min(m, out.curvature(i, j, k));
  out.curvature_min = m;
  out.violation = m < -tol_curv;
  return out;
}

}  // namespace pmt
