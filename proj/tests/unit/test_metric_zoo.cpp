#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pmtlab/metric_zoo.hpp"

namespace pmt {
namespace {

TEST(Flat, IdentityWithZeroOracles) {
  const AnalyticMetric m = flat();
  EXPECT_EQ(m.metric({1.0, -2.0, 3.0}), Sym3::identity());
  ASSERT_TRUE(m.scalar_curvature);
  EXPECT_EQ((*m.scalar_curvature)({0.3, 0.0, 0.0}), 0.0);
  ASSERT_TRUE(m.mass);
  EXPECT_EQ(*m.mass, 0.0);
}

TEST(Schwarzschild, ConformalFactorAtRadiusTwo) {
  const AnalyticMetric m = schwarzschild_isotropic(1.0);
  EXPECT_DOUBLE_EQ(m.conformal_factor({2.0, 0.0, 0.0}), 1.25);
  EXPECT_DOUBLE_EQ(m.metric({0.0, 2.0, 0.0})(1, 1), 2.44140625);
  EXPECT_EQ(m.metric({0.0, 2.0, 0.0})(0, 1), 0.0);
  EXPECT_EQ(*m.mass, 1.0);
  EXPECT_EQ((*m.scalar_curvature)({3.0, 1.0, 0.0}), 0.0);
}

TEST(Schwarzschild, SamplingRejectsSingularNode) {
  const Grid g = Grid::make(4.0, 17, 1.0, 1);
  EXPECT_THROW(sample(schwarzschild_isotropic(1.0).metric, g), Rejection);
  const AnalyticMetric shifted = schwarzschild_isotropic(1.0, {0.1, 0.2, 0.3});
  EXPECT_NO_THROW(sample(shifted.metric, g));
}

TEST(Schwarzschild, GradientMatchesDifferences) {
  const AnalyticMetric m = schwarzschild_isotropic(2.0);
  const Vec3 x{1.3, -0.4, 2.2};
  const double e = 1e-6;
  for (int d = 0; d < 3; ++d) {
    Vec3 p = x, q = x;
    p[d] += e;
    q[d] -= e;
    const double fd = (m.conformal_factor(p) - m.conformal_factor(q)) / (2 * e);
    EXPECT_NEAR(m.conformal_gradient(x)[d], fd, 1e-8);
  }
}

TEST(RoughProfile, ExteriorCoefficientTwoThirds) {
  const RoughProfile p{1.5, 1.0};
  EXPECT_DOUBLE_EQ(p.exterior_coefficient(), 2.0 / 3.0);
  const AnalyticMetric m = rough_conformal({});
  EXPECT_NEAR(*m.mass, 2.0 * 0.05 * 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(*m.holder_exponent, 0.5);
}

TEST(RoughProfile, SolvesRadialPoisson) {
  std::mt19937_64 rng(3);
  for (double beta : {1.2, 1.5, 1.8}) {
    const RoughProfile p{beta, 1.3};
    std::uniform_real_distribution<double> dist(0.1, 2.5);
    for (int trial = 0; trial < 20; ++trial) {
      const double r = dist(rng);
      if (std::abs(r - p.r0) < 0.01) continue;
      const double e = 1e-4;
      const double v2 = (p.value(r + e) - 2 * p.value(r) + p.value(r - e)) / (e * e);
      const double v1 = (p.value(r + e) - p.value(r - e)) / (2 * e);
      EXPECT_NEAR(-(v2 + 2.0 * v1 / r), p.source(r), 1e-5 * (1 + p.source(r))) << beta << " " << r;
      EXPECT_NEAR(v1, p.derivative(r), 1e-7);
    }
    EXPECT_NEAR(p.value(p.r0 * (1 - 1e-12)), p.value(p.r0 * (1 + 1e-12)), 1e-10);
    EXPECT_NEAR(p.derivative(p.r0 * (1 - 1e-12)), p.derivative(p.r0 * (1 + 1e-12)), 1e-10);
    EXPECT_NEAR(p.value(5.0) * 5.0, p.exterior_coefficient(), 1e-14);
  }
}

TEST(RoughConformal, CurvatureNonNegativeAndMatchesConformalIdentity) {
  RoughConformalSpec spec;
  spec.center = {0.2, 0.0, -0.1};
  const AnalyticMetric m = rough_conformal(spec);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 x{dist(rng), dist(rng), dist(rng)};
    const double s = (*m.scalar_curvature)(x);
    EXPECT_GE(s, 0.0);
    const double r = norm(x - spec.center);
    const RoughProfile p{spec.beta, spec.r0};
    const double u = 1.0 + spec.epsilon * p.value(r);
    // s = -8 Lap(u) / u^5 and Lap(u) = -eps f.
    EXPECT_NEAR(s, 8.0 * spec.epsilon * p.source(r) / std::pow(u, 5), 1e-12 * (1 + s));
  }
}

TEST(RoughConformal, RejectsOutOfClassParameters) {
  EXPECT_THROW(rough_conformal({0.05, 1.0, 1.0, {}}), Rejection);
  EXPECT_THROW(rough_conformal({0.05, 2.0, 1.0, {}}), Rejection);
  EXPECT_THROW(rough_conformal({0.0, 1.5, 1.0, {}}), Rejection);
  EXPECT_THROW(rough_conformal({0.05, 1.5, 0.0, {}}), Rejection);
  EXPECT_NO_THROW(rough_conformal_unchecked({0.05, 2.2, 1.0, {}}));
}

TEST(MakeFamily, LooksUpByName) {
  EXPECT_EQ(make_family("flat", {}).name, flat().name);
  EXPECT_EQ(*make_family("schwarzschild", {{"mass", 0.5}}).mass, 0.5);
  const AnalyticMetric r = make_family("rough_conformal", {{"epsilon", 0.1}, {"beta", 1.25}, {"center_x", 0.3}});
  EXPECT_NEAR(*r.mass, 2.0 * 0.1 / 1.75, 1e-15);
  EXPECT_THROW(make_family("kerr", {}), Rejection);
  EXPECT_THROW(make_family("rough_conformal", {{"beta", 2.5}}), Rejection);
}

TEST(RegularityCertificate, FlatIsConvergent) {
  const RegularityCertificate c = regularity_certificate(flat(), 1.0);
  ASSERT_EQ(c.levels.size(), 3u);
  EXPECT_TRUE(c.connection_convergent);
  EXPECT_TRUE(c.curvature_convergent);
  EXPECT_NEAR(c.levels[1].spacing * 2.0, c.levels[0].spacing, 1e-15);
  EXPECT_NEAR(c.levels[2].spacing * 4.0, c.levels[0].spacing, 1e-15);
}

TEST(RegularityCertificate, InClassRoughMetricConverges) {
  const RegularityCertificate c = regularity_certificate(rough_conformal({0.05, 1.5, 1.0, {}}), 1.0);
  EXPECT_TRUE(c.connection_convergent);
  EXPECT_TRUE(c.curvature_convergent);
}

TEST(RegularityCertificate, OutOfClassRoughMetricDiverges) {
  const RegularityCertificate c =
      regularity_certificate(rough_conformal_unchecked({0.05, 2.2, 1.0, {}}), 1.0);
  EXPECT_FALSE(c.connection_convergent && c.curvature_convergent);
  EXPECT_GT(c.levels[2].curvature_norm, 1.2 * c.levels[0].curvature_norm);
  EXPECT_GT(c.levels[2].connection_norm, 1.2 * c.levels[0].connection_norm);
}

}  // namespace
}  // namespace pmt
