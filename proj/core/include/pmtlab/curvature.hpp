#pragma once

#include <array>
#include <optional>

#include "pmtlab/field.hpp"

namespace pmt {

/// Gamma^k_{ij} packed as [k][slot(i, j)], 18 values per node.
using Christoffel = std::array<double, 18>;
using ChristoffelField = Field<Christoffel>;

inline double christoffel_at(const Christoffel& c, int k, int i, int j) {
  return c[static_cast<std::size_t>(6 * k + Sym3::slot(i, j))];
}

/// Centered finite-difference Christoffel symbols of the second kind, one
/// ghost layer fewer than the metric.
ChristoffelField christoffel(const MetricField& g);

/// s = g^{ij}(d_k G^k_ij - d_j G^k_ik + G^k_kl G^l_ij - G^k_jl G^l_ik).
/// The derivative of Gamma is expanded by the product rule so that only
/// compact first and second differences of g appear. Second-order accurate
/// for C^4 metrics; one ghost layer fewer than the metric.
ScalarField scalar_curvature_fd(const MetricField& g);

/// The same formula at a single node. `g` must hold the node's 3x3x3 block.
double scalar_curvature_at(const MetricField& g, int i, int j, int k);

/// Divergence-form Laplace-Beltrami operator
/// (det g)^{-1/2} d_i((det g)^{1/2} g^{ij} d_j u) on interior nodes. Axis
/// couplings use midpoint coefficients, cross couplings use node coefficients
/// at the neighbours (19-point stencil). Result has no ghost layers.
ScalarField laplace_beltrami(const ScalarField& u, const MetricField& g);

/// Curvature of u^4 g (n = 3) from u^{-5}(-(1/c_n) Lap_g u + s_g u) on
/// interior nodes. A missing base curvature means s_g = 0. Rejects u <= 0.
ScalarField scalar_curvature_conformal(const ScalarField& u, const ScalarField* base_s,
                                       const MetricField& g);

/// [s]_- = max(-s, 0) and [s]_+ = max(s, 0), so s = [s]_+ - [s]_-.
ScalarField negative_part(const ScalarField& s);
ScalarField positive_part(const ScalarField& s);

}  // namespace pmt
