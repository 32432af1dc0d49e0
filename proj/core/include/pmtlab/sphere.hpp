#pragma once

#include <span>
#include <vector>

#include "pmtlab/field.hpp"

namespace pmt {

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) times the
/// uniform rule in phi. Weights sum to 4*pi. Exact for spherical harmonics of
/// degree < 2 * 24.
struct SpherePoints {
  std::vector<Vec3> directions;
  std::vector<double> weights;

  static const SpherePoints& standard();
};

/// Trilinear interpolation of node data at an arbitrary point. `at(i, j, k)`
/// supplies node values; the containing cell must lie inside the stored
/// nodes, otherwise the point is rejected.
template <typename T, typename At>
T trilinear(const Grid& grid, const Vec3& x, At&& at) {
  const double h = grid.spacing();
  int base[3];
  double frac[3];
  for (int d = 0; d < 3; ++d) {
    const double s = (x[d] + grid.extent()) / h;
    int b = static_cast<int>(std::floor(s));
    if (b == grid.nodes() + grid.ghost() - 1) --b;
    base[d] = b;
    frac[d] = s - b;
  }
  if (!grid.holds(base[0], base[1], base[2]) ||
      !grid.holds(base[0] + 1, base[1] + 1, base[2] + 1))
    throw Rejection("trilinear sample outside stored nodes");
  T acc{};
  for (int c = 0; c < 8; ++c) {
    const int di = c & 1, dj = (c >> 1) & 1, dk = (c >> 2) & 1;
    const double w = (di ? frac[0] : 1.0 - frac[0]) * (dj ? frac[1] : 1.0 - frac[1]) *
                     (dk ? frac[2] : 1.0 - frac[2]);
    acc = acc + w * at(base[0] + di, base[1] + dj, base[2] + dk);
  }
  return acc;
}

/// Average of a scalar field over the sphere |x| = r about the origin.
double spherical_average(const ScalarField& f, double r);

/// Value at 1/r = 0 of the polynomial in 1/r through (radii[i], values[i]).
/// With two radii this is (r2 a2 - r1 a1) / (r2 - r1).
double extrapolate_inverse_radius(std::span<const double> radii, std::span<const double> values);

}  // namespace pmt
