#pragma once

#include "pmtlab/field.hpp"

namespace pmt {

/// Centered second-order derivative along `axis` (0, 1, 2) of order 1 or 2.
/// The result has one ghost layer fewer than the input; an input without
/// ghost layers is rejected.
ScalarField finite_diff(const ScalarField& f, int axis, int order);

/// Pointwise g^{ij} d_i f d_j f with centered differences, one ghost layer
/// fewer than the inputs.
ScalarField gradient_norm_sq(const ScalarField& f, const MetricField& g);

/// Centered gradient at a node that has both neighbours along every axis.
inline Vec3 centered_gradient(const ScalarField& f, int i, int j, int k) {
  const double inv = 0.5 / f.grid().spacing();
  return {(f(i + 1, j, k) - f(i - 1, j, k)) * inv, (f(i, j + 1, k) - f(i, j - 1, k)) * inv,
          (f(i, j, k + 1) - f(i, j, k - 1)) * inv};
}

}  // namespace pmt
