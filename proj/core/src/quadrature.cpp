#include "pmtlab/quadrature.hpp"

#include <cmath>
#include <string>

#include "pmtlab/parallel.hpp"

namespace pmt {

bool Region::contains(const Grid& grid, const Vec3& x) const {
  switch (kind_) {
    case Kind::all:
      return true;
    case Kind::compact:
      return grid.in_compact(x);
    case Kind::exterior:
      return !grid.in_compact(x);
    case Kind::custom:
      return mask_(x);
  }
  return false;
}

double volume_density(const MetricField& g, int i, int j, int k) {
  const double d = det(g(i, j, k));
  if (!(d > 0.0) || !std::isfinite(d))
    throw Rejection("degenerate metric at " + g.grid().describe(i, j, k));
  return std::sqrt(d);
}

double integrate(const Grid& grid, const std::function<double(int, int, int)>& integrand,
                 const MetricField* g, const Region& region) {
  if (g != nullptr && !grid.same_nodes(g->grid())) throw Rejection("integrate: grids differ");
  const int n = grid.nodes();
  const double h3 = grid.spacing() * grid.spacing() * grid.spacing();
  std::vector<std::string> errors(static_cast<std::size_t>(n));
  const double total = reduce_slabs(0, n, [&](int k, CompensatedSum& acc) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Vec3 x = grid.position(i, j, k);
        if (!region.contains(grid, x)) continue;
        double w = grid.trapezoid(i) * grid.trapezoid(j) * grid.trapezoid(k) * h3;
        if (g != nullptr) {
          const double d = det((*g)(i, j, k));
          if (!(d > 0.0) || !std::isfinite(d)) {
            if (errors[static_cast<std::size_t>(k)].empty())
              errors[static_cast<std::size_t>(k)] = "degenerate metric at " + grid.describe(i, j, k);
            continue;
          }
          w *= std::sqrt(d);
        }
        acc.add(integrand(i, j, k) * w);
      }
  });
  for (const auto& e : errors)
    if (!e.empty()) throw Rejection(e);
  return total;
}

namespace {

double lp_impl(const ScalarField& f, double p, const MetricField* g, const Region& region) {
  if (!(p >= 1.0)) throw Rejection("lp_norm: exponent must be >= 1");
  const double s = integrate(
      f.grid(),
      [&](int i, int j, int k) {
        const double a = std::abs(f(i, j, k));
        return p == 1.0 ? a : p == 2.0 ? a * a : std::pow(a, p);
      },
      g, region);
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

}  // namespace

double lp_norm(const ScalarField& f, double p, const MetricField& g, const Region& region) {
  return lp_impl(f, p, &g, region);
}

double lp_norm_flat(const ScalarField& f, double p, const Region& region) {
  return lp_impl(f, p, nullptr, region);
}

}  // namespace pmt
