#pragma once

#include <array>
#include <optional>

#include "pmtlab/field.hpp"
#include "pmtlab/metric_zoo.hpp"

namespace pmt {

/// C^3 smoothstep 35x^4 - 84x^5 + 70x^6 - 20x^7, clamped to [0, 1].
double smoothstep(double x);

/// Compactly supported bump exp(-1 / (1 - (d/t)^2)) for d < t, else 0.
double bump_kernel(double d, double t);

struct Box {
  Vec3 lo;
  Vec3 hi;
  bool contains(const Vec3& x) const {
    return x[0] >= lo[0] && x[0] <= hi[0] && x[1] >= lo[1] && x[1] <= hi[1] && x[2] >= lo[2] &&
           x[2] <= hi[2];
  }
};

/// Two overlapping chart boxes covering K with margin delta = R_K / 4, and a
/// smooth partition of unity {psi_0, psi_1, psi_end} subordinate to
/// {box_0, box_1, complement of K}. psi_end vanishes on K and equals 1 for
/// |x| >= R_K + delta.
class ChartCover {
 public:
  explicit ChartCover(double compact_radius);

  double compact_radius() const { return compact_radius_; }
  double blend_width() const { return blend_width_; }
  const std::array<Box, 2>& charts() const { return charts_; }

  double end_weight(const Vec3& x) const;
  double chart_weight(int chart, const Vec3& x) const;
  bool untouched(const Vec3& x) const { return norm(x) >= compact_radius_ + blend_width_; }

 private:
  double compact_radius_;
  double blend_width_;
  std::array<Box, 2> charts_;
};

struct CurvatureDeficit {
  double deficit_compact = 0.0;   // ||s_{g_t} - s_g||_{L^{3/2}(K, g)}
  double deficit_all = 0.0;       // ||s_{g_t} - s_g||_{L^{3/2}(M, g_t)}
  double sminus_norm = 0.0;       // ||[s_{g_t}]_-||_{L^{3/2}(M, g_t)}
  double sminus_norm_65 = 0.0;    // ||[s_{g_t}]_-||_{L^{6/5}(M, g_t)}
};

/// One member g_t of the mollified family.
struct SmoothedMetric {
  double t = 0.0;
  MetricField metric;
  double rho = 1.0;
  std::optional<CurvatureDeficit> deficit;
  std::optional<ScalarField> scalar_curvature;
};

/// g_t = g + sum_a psi_a (eta_t * g - g): chart-wise discrete convolution with
/// the unit-sum bump kernel of radius t, blended by the partition of unity.
/// Nodes with |x| >= R_K + delta keep g bitwise. Rejects t <= 0, kernels that
/// leave the stored nodes, and blended metrics that are not positive definite.
SmoothedMetric mollify_family(const MetricField& g, const ChartCover& cover, double t);
SmoothedMetric mollify_family(const AnalyticMetric& g, const Grid& grid, double t);

/// Least rho >= 1 with g_t / rho <= g <= rho g_t at every interior node, from
/// the generalized eigenvalues of the pencil (g, g_t).
double equivalence_rho(const MetricField& g, const MetricField& g_t);

/// Curvature of the reference metric: the sampled oracle s_g and the finite
/// difference curvature of the sampled g on the same nodes.
struct CurvatureReference {
  ScalarField oracle;
  ScalarField discrete;
};

/// Rejects metrics without an oracle.
CurvatureReference make_curvature_reference(const AnalyticMetric& metric, const MetricField& g);

/// s_{g_t} = s_g + (S_h[g_t] - S_h[g]) with S_h the finite-difference scalar
/// curvature. The oracle carries the rough part; the differences carry the
/// effect of smoothing and vanish identically wherever g_t = g on the stencil.
ScalarField smoothed_scalar_curvature(const CurvatureReference& ref, const MetricField& g,
                                      const SmoothedMetric& smoothed, const ChartCover& cover);

/// Fills deficit and scalar_curvature of `smoothed`; returns the deficit.
CurvatureDeficit curvature_deficit(const CurvatureReference& ref, const MetricField& g,
                                   SmoothedMetric& smoothed, const ChartCover& cover);
CurvatureDeficit curvature_deficit(const AnalyticMetric& metric, SmoothedMetric& smoothed,
                                   const Grid& grid);

}  // namespace pmt
