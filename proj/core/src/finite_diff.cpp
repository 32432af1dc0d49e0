#include "pmtlab/finite_diff.hpp"

#include <string>

#include "pmtlab/parallel.hpp"

namespace pmt {

ScalarField finite_diff(const ScalarField& f, int axis, int order) {
  const Grid& in = f.grid();
  if (axis < 0 || axis > 2) throw Rejection("finite_diff: axis must be 0, 1 or 2");
  if (order != 1 && order != 2) throw Rejection("finite_diff: order must be 1 or 2");
  if (in.ghost() < 1) throw Rejection("finite_diff: derivative requested beyond ghost support");
  const Grid out_grid = in.with_ghost(in.ghost() - 1);
  ScalarField out(out_grid);
  const double h = in.spacing();
  const int lo = -out_grid.ghost(), hi = out_grid.nodes() + out_grid.ghost();
  const int di = axis == 0, dj = axis == 1, dk = axis == 2;
  for_each_slab(lo, hi, [&](int k) {
    for (int j = lo; j < hi; ++j)
      for (int i = lo; i < hi; ++i) {
        const double fp = f(i + di, j + dj, k + dk), fm = f(i - di, j - dj, k - dk);
        out(i, j, k) = order == 1 ? (fp - fm) / (2.0 * h) : (fp - 2.0 * f(i, j, k) + fm) / (h * h);
      }
  });
  return out;
}

ScalarField gradient_norm_sq(const ScalarField& f, const MetricField& g) {
  const Grid& in = f.grid();
  if (!in.same_nodes(g.grid())) throw Rejection("gradient_norm_sq: grids differ");
  if (in.ghost() < 1) throw Rejection("gradient_norm_sq: derivative requested beyond ghost support");
  if (g.grid().ghost() < in.ghost() - 1) throw Rejection("gradient_norm_sq: metric ghost too narrow");
  const Grid out_grid = in.with_ghost(in.ghost() - 1);
  ScalarField out(out_grid);
  const int lo = -out_grid.ghost(), hi = out_grid.nodes() + out_grid.ghost();
  for_each_slab_checked(lo, hi, [&](int k) -> std::string {
    for (int j = lo; j < hi; ++j)
      for (int i = lo; i < hi; ++i) {
        const auto ginv = inverse_spd(g(i, j, k));
        if (!ginv) return "gradient_norm_sq: degenerate metric at " + in.describe(i, j, k);
        out(i, j, k) = quadratic_form(*ginv, centered_gradient(f, i, j, k));
      }
    return {};
  });
  return out;
}

}  // namespace pmt
