#include "pmtlab/conformal.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "pmtlab/finite_diff.hpp"
#include "pmtlab/parallel.hpp"
#include "pmtlab/quadrature.hpp"
#include "pmtlab/sphere.hpp"

namespace pmt {

namespace {

constexpr int kCrossPairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};

double dot(const ScalarField& a, const ScalarField& b) {
  const int n = a.grid().nodes();
  return reduce_slabs(0, n, [&](int k, CompensatedSum& acc) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) acc.add(a(i, j, k) * b(i, j, k));
  });
}

}  // namespace

EllipticOperator::EllipticOperator(const MetricField& g, const ScalarField& sminus,
                                   const Constants& constants)
    : grid_(g.grid().with_ghost(1)),
      face_{ScalarField(grid_), ScalarField(grid_), ScalarField(grid_)},
      cross_{ScalarField(grid_), ScalarField(grid_), ScalarField(grid_)},
      extra_(grid_),
      diag_(grid_),
      rhs_(grid_),
      weight_(grid_) {
  if (!g.grid().same_nodes(sminus.grid())) throw Rejection("assemble_operator: grids differ");
  const int n = grid_.nodes();
  const double h = grid_.spacing();
  const double h3 = h * h * h;
  const double extent = grid_.extent();

  // Densitized inverse metric on interior nodes.
  Field<Sym3> a(grid_.with_ghost(0));
  for_each_slab_checked(0, n, [&](int k) -> std::string {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const auto inv = inverse_spd(g(i, j, k));
        const double d = det(g(i, j, k));
        if (!inv || !(d > 0.0) || !std::isfinite(d))
          return "assemble_operator: singular metric at " + grid_.describe(i, j, k);
        if (!(sminus(i, j, k) >= 0.0))
          return "assemble_operator: negative potential at " + grid_.describe(i, j, k);
        a(i, j, k) = std::sqrt(d) * *inv;
      }
    return {};
  });

  for_each_slab(0, n, [&](int k) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int idx[3] = {i, j, k};
        const Sym3& ap = a(i, j, k);
        for (int d = 0; d < 3; ++d) {
          if (idx[d] + 1 >= n) continue;
          double transverse = 1.0;
          for (int e = 0; e < 3; ++e)
            if (e != d) transverse *= grid_.trapezoid(idx[e]);
          const int ni = i + (d == 0), nj = j + (d == 1), nk = k + (d == 2);
          const double abar = 0.5 * (ap(d, d) + a(ni, nj, nk)(d, d));
          face_[static_cast<std::size_t>(d)](i, j, k) = h * abar * transverse;
        }
        const bool strict = i > 0 && j > 0 && k > 0 && i < n - 1 && j < n - 1 && k < n - 1;
        if (strict)
          for (int c = 0; c < 3; ++c)
            cross_[static_cast<std::size_t>(c)](i, j, k) = 0.25 * h * ap(kCrossPairs[c][0], kCrossPairs[c][1]);

        const Vec3 x = grid_.position(i, j, k);
        const double r2 = dot(x, x);
        double robin = 0.0;
        for (int d = 0; d < 3; ++d) {
          if (idx[d] != 0 && idx[d] != n - 1) continue;
          double in_face = 1.0;
          for (int e = 0; e < 3; ++e)
            if (e != d) in_face *= grid_.trapezoid(idx[e]);
          robin += h * h * in_face * ap(d, d) * (constants.n - 2) * extent / r2;
        }
        const double w = grid_.trapezoid(i) * grid_.trapezoid(j) * grid_.trapezoid(k) * h3 *
                         std::sqrt(det(g(i, j, k)));
        const double v = constants.c_n * sminus(i, j, k);
        weight_(i, j, k) = w;
        extra_(i, j, k) = robin - w * v;
        rhs_(i, j, k) = w * v;
      }
  });

  for_each_slab(0, n, [&](int k) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        double s = extra_(i, j, k);
        s += face_[0](i, j, k) + face_[0](i - 1, j, k);
        s += face_[1](i, j, k) + face_[1](i, j - 1, k);
        s += face_[2](i, j, k) + face_[2](i, j, k - 1);
        diag_(i, j, k) = s;
      }
  });
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (rhs_(i, j, k) != 0.0) homogeneous_ = false;
}

void EllipticOperator::apply(const ScalarField& x, ScalarField& y) const {
  const int n = grid_.nodes();
  for_each_slab(0, n, [&](int k) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double xp = x(i, j, k);
        double s = extra_(i, j, k) * xp;
        s += face_[0](i, j, k) * (xp - x(i + 1, j, k)) + face_[0](i - 1, j, k) * (xp - x(i - 1, j, k));
        s += face_[1](i, j, k) * (xp - x(i, j + 1, k)) + face_[1](i, j - 1, k) * (xp - x(i, j - 1, k));
        s += face_[2](i, j, k) * (xp - x(i, j, k + 1)) + face_[2](i, j, k - 1) * (xp - x(i, j, k - 1));
        for (int c = 0; c < 3; ++c) {
          const ScalarField& cf = cross_[static_cast<std::size_t>(c)];
          const int p = kCrossPairs[c][0], q = kCrossPairs[c][1];
          const int ep[3] = {p == 0, p == 1, p == 2};
          const int eq[3] = {q == 0, q == 1, q == 2};
          // Coupling through neighbours along p, differenced along q.
          auto term = [&](const int* e, const int* f) {
            const int ai = i + e[0], aj = j + e[1], ak = k + e[2];
            const int bi = i - e[0], bj = j - e[1], bk = k - e[2];
            double t = 0.0;
            const double ca = cf(ai, aj, ak), cb = cf(bi, bj, bk);
            if (ca != 0.0)
              t += ca * (x(ai + f[0], aj + f[1], ak + f[2]) - x(ai - f[0], aj - f[1], ak - f[2]));
            if (cb != 0.0)
              t -= cb * (x(bi + f[0], bj + f[1], bk + f[2]) - x(bi - f[0], bj - f[1], bk - f[2]));
            return t;
          };
          s -= term(ep, eq) + term(eq, ep);
        }
        y(i, j, k) = s;
      }
  });
}

ScalarField EllipticOperator::evaluate(const ScalarField& u) const {
  ScalarField x(grid_);
  const int n = grid_.nodes();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) x(i, j, k) = u(i, j, k);
  ScalarField y(grid_);
  apply(x, y);
  ScalarField out(grid_.with_ghost(0));
  for_each_slab(2, n - 2, [&](int k) {
    for (int j = 2; j < n - 2; ++j)
      for (int i = 2; i < n - 2; ++i) out(i, j, k) = -y(i, j, k) / weight_(i, j, k);
  });
  return out;
}

EllipticOperator assemble_operator(const MetricField& g, const ScalarField& sminus,
                                   const Constants& constants) {
  return EllipticOperator(g, sminus, constants);
}

double extract_A(const ScalarField& w, std::span<const double> fit_radii) {
  if (fit_radii.size() < 2) throw Rejection("extract_A: two fit radii required");
  const Grid& grid = w.grid();
  std::vector<double> values;
  for (const double r : fit_radii) {
    if (!(r > grid.compact_radius()) || !(r < grid.extent()))
      throw Rejection("extract_A: fit radius outside grid");
    values.push_back(r * spherical_average(w, r));
  }
  return extrapolate_inverse_radius(fit_radii, values);
}

ConformalSolution solve_conformal_factor(const EllipticOperator& op, const MetricField& g,
                                         const SolverSettings& settings,
                                         std::span<const double> fit_radii) {
  const Grid& grid = op.grid();
  const int n = grid.nodes();
  ScalarField x(grid), r(grid), z(grid), p(grid), q(grid);
  const ScalarField& b = op.source();
  const ScalarField& d = op.diagonal();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (!(d(i, j, k) > 0.0))
          throw Rejection("solve_conformal_factor: non-positive diagonal at " + grid.describe(i, j, k));

  const double bnorm = std::sqrt(dot(b, b));
  double residual = 0.0;
  int iterations = 0;
  if (bnorm > 0.0) {
    auto precondition = [&] {
      for_each_slab(0, n, [&](int k) {
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i) z(i, j, k) = r(i, j, k) / d(i, j, k);
      });
    };
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) r(i, j, k) = b(i, j, k);
    precondition();
    p = z;
    double rz = dot(r, z);
    residual = 1.0;
    while (residual > settings.tolerance) {
      if (iterations >= settings.max_iterations) {
        std::ostringstream msg;
        msg << "solve_conformal_factor: no convergence after " << iterations
            << " iterations (relative residual " << residual << ")";
        throw Rejection(msg.str());
      }
      op.apply(p, q);
      const double pq = dot(p, q);
      if (!(pq > 0.0)) throw Rejection("solve_conformal_factor: operator not positive definite");
      const double alpha = rz / pq;
      for_each_slab(0, n, [&](int k) {
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i) {
            x(i, j, k) += alpha * p(i, j, k);
            r(i, j, k) -= alpha * q(i, j, k);
          }
      });
      precondition();
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for_each_slab(0, n, [&](int k) {
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i) p(i, j, k) = z(i, j, k) + beta * p(i, j, k);
      });
      ++iterations;
      residual = std::sqrt(dot(r, r)) / bnorm;
    }
    // True residual, free of recurrence drift.
    op.apply(x, q);
    for_each_slab(0, n, [&](int k) {
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) r(i, j, k) = b(i, j, k) - q(i, j, k);
    });
    residual = std::sqrt(dot(r, r)) / bnorm;
  }

  const Grid out_grid = grid.with_ghost(g.grid().ghost());
  ScalarField w(out_grid), u(out_grid);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) w(i, j, k) = x(i, j, k);
  extrapolate_ghosts(w, 0.0);
  const auto values = w.values();
  auto uv = u.values();
  for (std::size_t m = 0; m < values.size(); ++m) uv[m] = 1.0 + values[m];
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (!(u(i, j, k) > 0.0))
          throw Rejection("solve_conformal_factor: u <= 0 at " + grid.describe(i, j, k) +
                          ", positivity violated");

  ConformalSolution sol{std::move(u), std::move(w)};
  sol.residual = residual;
  sol.iterations = iterations;
  sol.A = bnorm > 0.0 ? extract_A(sol.w, fit_radii) : 0.0;
  const MetricField gm = regrid(g, out_grid);
  sol.w_norm = lp_norm(sol.w, 6.0, gm, Region::all());
  const ScalarField grad = gradient_norm_sq(sol.w, gm);
  sol.dw_norm_sq = integrate(
      grid, [&](int i, int j, int k) { return grad(i, j, k); }, &gm, Region::all());
  return sol;
}

WBounds verify_w_bounds(const ConformalSolution& sol, const ScalarField& sminus, const MetricField& g,
                        double c1_upper, const Constants& constants, double slack) {
  WBounds out;
  const MetricField gm = regrid(g, sminus.grid());
  const double s65 = lp_norm(sminus, 6.0 / 5.0, gm, Region::all());
  const double s32 = lp_norm(sminus, 1.5, gm, Region::all());
  out.w_lhs = sol.w_norm;
  out.w_rhs = 8.0 * constants.c_n * constants.c_n * c1_upper * c1_upper * s65;
  out.dw_lhs = sol.dw_norm_sq;
  out.dw_rhs = constants.c_n * (s32 * sol.w_norm * sol.w_norm + s65 * sol.w_norm);
  out.w_pass = out.w_lhs <= (1.0 + slack) * out.w_rhs;
  out.dw_pass = out.dw_lhs <= (1.0 + slack) * out.dw_rhs;
  return out;
}

}  // namespace pmt
