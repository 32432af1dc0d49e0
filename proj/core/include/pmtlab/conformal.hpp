#pragma once

#include <span>
#include <vector>

#include "pmtlab/field.hpp"
#include "pmtlab/functional.hpp"

namespace pmt {

struct SolverSettings {
  double tolerance = 1e-10;
  int max_iterations = 20000;
};

/// Discretisation of w -> -(Lap_{g} w + c_n [s]_- w) on the interior nodes of
/// the truncated cube, written in symmetric (volume-weighted) form
///
///   K w = sum_edges h abar (w_P - w_Q) - cross couplings
///         + Robin boundary terms - h^3 sqrt(det g) V w,
///
/// with V = c_n [s]_-, trapezoid weights at the boundary and the outer Robin
/// condition d_nu w + (x.nu / |x|^2) w = 0 (exact for w = A/r). The matrix is
/// symmetric by construction. Vectors are ScalarFields with one zero ghost
/// layer.
class EllipticOperator {
 public:
  EllipticOperator(const MetricField& g, const ScalarField& sminus, const Constants& constants);

  const Grid& grid() const { return grid_; }

  void apply(const ScalarField& x, ScalarField& y) const;
  const ScalarField& diagonal() const { return diag_; }
  /// Right-hand side h^3 sqrt(det g) V times trapezoid weights.
  const ScalarField& source() const { return rhs_; }
  bool homogeneous() const { return homogeneous_; }

  /// Lap_g u + V u at interior nodes off the boundary, from the assembled
  /// rows; boundary nodes are set to zero.
  ScalarField evaluate(const ScalarField& u) const;

 private:
  Grid grid_;  // interior nodes, ghost 1
  std::array<ScalarField, 3> face_;
  std::array<ScalarField, 3> cross_;  // xy, xz, yz
  ScalarField extra_;
  ScalarField diag_;
  ScalarField rhs_;
  ScalarField weight_;  // h^3 sqrt(det g) times trapezoid weights
  bool homogeneous_ = true;
};

EllipticOperator assemble_operator(const MetricField& g, const ScalarField& sminus, const Constants& constants);

struct ConformalSolution {
  ScalarField u;
  ScalarField w;
  double A = 0.0;
  double w_norm = 0.0;
  double dw_norm_sq = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Solves K w = h^3 sqrt(det g) V (i.e. Lap w + V w = -V) with preconditioned
/// conjugate gradients, then u = 1 + w. Ghost layers of w and u (width of the
/// metric) follow the 1/r falloff. Rejects stagnation and u <= 0.
ConformalSolution solve_conformal_factor(const EllipticOperator& op, const MetricField& g,
                                         const SolverSettings& settings, std::span<const double> fit_radii);

/// Richardson-combined spherical average of w r over two (or more) radii.
double extract_A(const ScalarField& w, std::span<const double> fit_radii);

struct WBounds {
  double w_lhs = 0.0, w_rhs = 0.0;
  double dw_lhs = 0.0, dw_rhs = 0.0;
  bool w_pass = true, dw_pass = true;
};

/// Evaluates ||w||_6 <= 8 c_n^2 c1^2 ||[s]_-||_{6/5} and
/// ||grad w||_2^2 <= c_n (||[s]_-||_{3/2} ||w||_6^2 + ||[s]_-||_{6/5} ||w||_6),
/// accepting LHS <= (1 + slack) RHS.
WBounds verify_w_bounds(const ConformalSolution& sol, const ScalarField& sminus, const MetricField& g,
                        double c1_upper, const Constants& constants, double slack = 0.05);

}  // namespace pmt
