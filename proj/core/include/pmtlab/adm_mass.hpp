#pragma once

#include <span>
#include <vector>

#include "pmtlab/conformal.hpp"
#include "pmtlab/field.hpp"
#include "pmtlab/functional.hpp"

namespace pmt {

struct MassEstimate {
  double value = 0.0;
  std::vector<double> radii_used;
  std::vector<double> shell_values;  // surface integral at each radius
  double extrapolation_error = 0.0;
  double truncation_error = 0.0;
};

/// ADM mass (1/16pi) \oint (d_j g_ij - d_i g_jj) nu^i dA on coordinate spheres
/// about the origin, extrapolated in 1/r over `radii`. The integrand is
/// differenced at nodes to fourth order and sampled by tricubic interpolation. Radii must lie strictly
/// between R_K + R_K/4 and R - 2h.
///
/// extrapolation_error: with three or more radii, the change from dropping the
/// innermost one; with two, the size of the extrapolation correction.
/// truncation_error: |m(second-order differences) - m|, which bounds the
/// error of the lower-order estimate.
MassEstimate adm_mass(const MetricField& g, std::span<const double> radii);

/// Surface integral at a single radius with centered differences of order 2
/// or 4.
double adm_shell(const MetricField& g, double radius, int order = 4);

struct MassDefect {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// (2/omega) \int (|grad u|^2 - c_n [s]_- u^2) dmu_g over the truncated domain,
/// plus the bound 2 A^2 / R on the neglected exterior.
MassDefect mass_defect(const ConformalSolution& sol, const ScalarField& sminus, const MetricField& g,
                       const Constants& constants);

struct ConformalMass {
  MassEstimate mass;
  ScalarField curvature;  // identity-form curvature of u^4 g
  double curvature_min = 0.0;
  bool violation = false;
};

/// ADM mass of u^4 g and its scalar curvature u^{-5}(-8 Lap_g u + s_g u). The
/// minimum is taken over nodes off the outer boundary layer; a minimum below
/// -tol_curv is flagged.
ConformalMass conformal_mass(const ConformalSolution& sol, const MetricField& g, const ScalarField& s_g,
                             std::span<const double> radii, double tol_curv);

/// Nodewise u^4 g on the nodes of u.
MetricField conformal_metric(const ScalarField& u, const MetricField& g);

}  // namespace pmt
