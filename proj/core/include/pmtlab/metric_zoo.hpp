#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmtlab/field.hpp"

namespace pmt {

/// Closed-form metric family with optional oracles.
///
/// `scalar_curvature` and `mass` are analytic ground truth. Families that are
/// conformally flat (g = u^4 delta) also expose u and its gradient, which the
/// regularity certificate uses for closed-form Christoffel symbols.
struct AnalyticMetric {
  std::string name;
  MetricFn metric;
  std::optional<ScalarFn> scalar_curvature;
  std::optional<double> mass;
  double smooth_outside = 0.0;
  std::optional<double> holder_exponent;

  ScalarFn conformal_factor;
  std::function<Vec3(const Vec3&)> conformal_gradient;

  bool conformally_flat() const { return static_cast<bool>(conformal_factor); }
};

/// Builds g = u^4 delta from u and grad u. The curvature oracle is optional
/// because only some profiles have a closed-form Laplacian.
AnalyticMetric conformally_flat(std::string name, ScalarFn u, std::function<Vec3(const Vec3&)> grad_u,
                                std::optional<ScalarFn> scalar_curvature,
                                std::optional<double> mass);

AnalyticMetric flat();

/// (1 + m / 2r)^4 delta about `center`. Sampling rejects a node at r = 0.
AnalyticMetric schwarzschild_isotropic(double m, const Vec3& center = {0.0, 0.0, 0.0});

struct RoughConformalSpec {
  double epsilon = 0.05;
  double beta = 1.5;
  double r0 = 1.0;
  Vec3 center{0.0, 0.0, 0.0};
};

/// Radial potential v with -Laplacian(v) = |x - x0|^{-beta} on the ball of
/// radius r0 and 0 outside, normalised so that v = C / |x - x0| outside.
struct RoughProfile {
  double beta;
  double r0;

  double exterior_coefficient() const;  // C = r0^{3-beta} / (3 - beta)
  double value(double r) const;
  double derivative(double r) const;
  double source(double r) const;
};

/// g = (1 + eps v)^4 delta; C^{0, 2-beta}, not Lipschitz, with non-negative
/// L^{3/2} curvature 8 eps u^{-5} f and mass 2 eps C. Rejects beta outside
/// (1, 2), eps <= 0, r0 <= 0.
AnalyticMetric rough_conformal(const RoughConformalSpec& spec);

/// Same construction without the range checks; used to build deliberately
/// out-of-class examples.
AnalyticMetric rough_conformal_unchecked(const RoughConformalSpec& spec);

/// Evidence that the connection lies in L^3(K) and the curvature in L^{3/2}(K):
/// both norms at spacings h, h/2, h/4, with h = 4.5 R_K / (base_nodes - 1).
/// Every level has an even node count, so the origin is a cell centre.
struct RegularityCertificate {
  struct Level {
    double spacing;
    double connection_norm;
    double curvature_norm;
  };
  std::vector<Level> levels;
  bool connection_convergent = false;
  bool curvature_convergent = false;
};

/// `curvature_exponent` is the p of the curvature norm (n/2 by default); the
/// connection is measured in L^{2p}. Successive values must differ by less
/// than 5% to be flagged convergent.
RegularityCertificate regularity_certificate(const AnalyticMetric& metric, double compact_radius,
                                             double curvature_exponent = 1.5, int base_nodes = 25);

/// Family lookup by name for configuration files. Recognised names: flat,
/// schwarzschild (mass), rough_conformal (epsilon, beta, r0, center_x/y/z).
AnalyticMetric make_family(const std::string& name, const std::map<std::string, double>& params);

}  // namespace pmt
