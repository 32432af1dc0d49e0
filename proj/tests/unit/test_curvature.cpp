#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pmtlab/curvature.hpp"
#include "pmtlab/metric_zoo.hpp"
#include "pmtlab/parallel.hpp"
#include "pmtlab/quadrature.hpp"

namespace pmt {
namespace {

// Stereographic round metric of the unit sphere: s = 6.
Sym3 round_sphere(const Vec3& x) {
  const double q = 1.0 + dot(x, x);
  return Sym3::scaled_identity(4.0 / (q * q));
}

double round_sphere_factor(const Vec3& x) { return std::sqrt(2.0 / (1.0 + dot(x, x))); }

// L2 error of the round-sphere curvature over the ball |x| <= 1.5.
double curvature_error(int nodes) {
  const Grid g = Grid::make(2.0, nodes, 0.5, 1);
  const ScalarField s = scalar_curvature_fd(sample(MetricFn(round_sphere), g));
  CompensatedSum acc;
  for (int k = 0; k < nodes; ++k)
    for (int j = 0; j < nodes; ++j)
      for (int i = 0; i < nodes; ++i)
        if (norm(g.position(i, j, k)) <= 1.5) acc.add((s(i, j, k) - 6.0) * (s(i, j, k) - 6.0));
  return std::sqrt(acc.value() * std::pow(g.spacing(), 3));
}

TEST(ScalarCurvature, FlatIsZero) {
  const Grid g = Grid::make(4.0, 17, 1.0, 1);
  const ScalarField s = scalar_curvature_fd(MetricField(g, Sym3::identity()));
  for (double v : s.values()) EXPECT_EQ(v, 0.0);
  const ScalarField sc = scalar_curvature_fd(MetricField(g, Sym3::diagonal(3.0, 0.5, 2.0)));
  for (double v : sc.values()) EXPECT_EQ(v, 0.0);
}

TEST(ScalarCurvature, RoundSphereIsSix) {
  const Grid g = Grid::make(2.0, 33, 0.5, 1);
  const ScalarField s = scalar_curvature_fd(sample(MetricFn(round_sphere), g));
  EXPECT_EQ(s.grid().ghost(), 0);
  for (double v : s.values()) EXPECT_NEAR(v, 6.0, 0.2);
}

TEST(ScalarCurvature, SecondOrderConvergence) {
  const double e1 = curvature_error(49), e2 = curvature_error(97);
  EXPECT_GE(std::log2(e1 / e2), 1.9);
}

TEST(ScalarCurvature, SchwarzschildVanishesAwayFromHorizon) {
  const Grid g = Grid::make(8.0, 64, 3.0, 1);
  const ScalarField s = scalar_curvature_fd(sample(schwarzschild_isotropic(1.0).metric, g));
  for (int k = 0; k < 64; ++k)
    for (int j = 0; j < 64; ++j)
      for (int i = 0; i < 64; ++i)
        if (norm(g.position(i, j, k)) >= 2.0) EXPECT_NEAR(s(i, j, k), 0.0, 2e-2);
}

TEST(ScalarCurvature, AxisPermutationInvariance) {
  auto metric = [](const Vec3& x) {
    Sym3 m = Sym3::diagonal(1.0 + 0.1 * x[0] * x[0], 1.0 + 0.05 * x[1], 1.2 + 0.1 * std::sin(x[2]));
    m.at(0, 1) = 0.05 * x[2];
    m.at(1, 2) = 0.02 * x[0] * x[1];
    return m;
  };
  // Cyclic relabelling (x, y, z) -> (y, z, x).
  auto permuted = [&](const Vec3& y) {
    const Vec3 x{y[2], y[0], y[1]};
    const Sym3 a = metric(x);
    Sym3 b;
    const int p[3] = {1, 2, 0};
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) b.at(i, j) = a(p[i], p[j]);
    return b;
  };
  const Grid g = Grid::make(2.0, 17, 0.5, 1);
  const ScalarField s1 = scalar_curvature_fd(sample(MetricFn(metric), g));
  const ScalarField s2 = scalar_curvature_fd(sample(MetricFn(permuted), g));
  for (int k = 0; k < 17; ++k)
    for (int j = 0; j < 17; ++j)
      for (int i = 0; i < 17; ++i) EXPECT_NEAR(s1(k, i, j), s2(i, j, k), 1e-11);
}

TEST(Christoffel, SchwarzschildClosedForm) {
  const AnalyticMetric m = schwarzschild_isotropic(1.0);
  const Grid g = Grid::make(8.0, 128, 3.0, 1);
  const ChristoffelField chr = christoffel(sample(m.metric, g));
  const int idx[3][3] = {{90, 70, 64}, {100, 40, 90}, {64, 64, 110}};
  for (const auto& n : idx) {
    const Vec3 x = g.position(n[0], n[1], n[2]);
    const double u = m.conformal_factor(x);
    const Vec3 du = m.conformal_gradient(x);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const double exact = 2.0 / u * ((j == k) * du[i] + (i == k) * du[j] - (i == j) * du[k]);
          EXPECT_NEAR(christoffel_at(chr(n[0], n[1], n[2]), k, i, j), exact, 2e-3);
        }
  }
}

TEST(LaplaceBeltrami, ExactOnQuadraticsForConstantMetrics) {
  const Grid g = Grid::make(2.0, 17, 0.5, 1);
  Sym3 a = Sym3::diagonal(4.0, 1.0, 2.0);
  a.at(0, 1) = 0.5;
  const Sym3 inv = *inverse_spd(a);
  const MetricField metric(g, a);
  const ScalarField xx = sample([](const Vec3& x) { return x[0] * x[0]; }, g);
  const ScalarField xy = sample([](const Vec3& x) { return x[0] * x[1]; }, g);
  const ScalarField l1 = laplace_beltrami(xx, metric);
  const ScalarField l2 = laplace_beltrami(xy, metric);
  for (int k = 0; k < 17; ++k)
    for (int j = 0; j < 17; ++j)
      for (int i = 0; i < 17; ++i) {
        EXPECT_NEAR(l1(i, j, k), 2.0 * inv(0, 0), 1e-12);
        EXPECT_NEAR(l2(i, j, k), 2.0 * inv(0, 1), 1e-12);
      }
}

TEST(ConformalCurvature, FlatBaseReproducesRoundSphere) {
  const Grid g = Grid::make(2.0, 33, 0.5, 1);
  const ScalarField u = sample(ScalarFn(round_sphere_factor), g);
  const ScalarField s = scalar_curvature_conformal(u, nullptr, MetricField(g, Sym3::identity()));
  for (double v : s.values()) EXPECT_NEAR(v, 6.0, 0.2);
}

TEST(ConformalCurvature, AgreesWithDirectCurvatureOfProduct) {
  auto base = [](const Vec3& x) { return Sym3::diagonal(1.0 + 0.1 * x[1] * x[1], 1.0, 1.0 + 0.05 * x[0]); };
  auto factor = [](const Vec3& x) { return 1.0 + 0.2 * std::exp(-dot(x, x)); };
  const Grid g = Grid::make(2.0, 33, 0.5, 2);
  const MetricField gb = sample(MetricFn(base), g);
  const ScalarField sb = regrid(scalar_curvature_fd(gb), g.with_ghost(0));
  const ScalarField u = sample(ScalarFn(factor), g);
  const ScalarField via_identity = scalar_curvature_conformal(u, &sb, gb);
  const ScalarField direct = scalar_curvature_fd(sample(
      [&](const Vec3& x) {
        const double f = factor(x);
        return (f * f * f * f) * base(x);
      },
      g));
  for (int k = 0; k < 33; ++k)
    for (int j = 0; j < 33; ++j)
      for (int i = 0; i < 33; ++i) EXPECT_NEAR(via_identity(i, j, k), direct(i, j, k), 0.02);
}

TEST(ConformalCurvature, RejectsNonPositiveFactor) {
  const Grid g = Grid::make(2.0, 17, 0.5, 1);
  ScalarField u(g, 1.0);
  u(3, 4, 5) = 0.0;
  EXPECT_THROW(scalar_curvature_conformal(u, nullptr, MetricField(g, Sym3::identity())), Rejection);
}

TEST(Parts, DecomposeExactly) {
  const Grid g = Grid::make(2.0, 17, 0.5, 0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist;
  ScalarField s(g);
  for (double& v : s.values()) v = dist(rng);
  const ScalarField neg = negative_part(s), pos = positive_part(s);
  for (std::size_t q = 0; q < s.values().size(); ++q) {
    EXPECT_GE(neg.values()[q], 0.0);
    EXPECT_GE(pos.values()[q], 0.0);
    EXPECT_EQ(neg.values()[q] * pos.values()[q], 0.0);
    EXPECT_EQ(pos.values()[q] - neg.values()[q], s.values()[q]);
  }
}

TEST(ScalarCurvature, RejectsDegenerateAndMissingGhosts) {
  const Grid g = Grid::make(2.0, 17, 0.5, 1);
  MetricField m(g, Sym3::identity());
  m(4, 4, 4) = Sym3::diagonal(1.0, 0.0, 1.0);
  EXPECT_THROW(scalar_curvature_fd(m), Rejection);
  EXPECT_THROW(scalar_curvature_fd(MetricField(g.with_ghost(0), Sym3::identity())), Rejection);
  EXPECT_THROW(christoffel(MetricField(g.with_ghost(0), Sym3::identity())), Rejection);
}

}  // namespace
}  // namespace pmt
