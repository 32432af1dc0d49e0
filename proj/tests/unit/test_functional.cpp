#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pmtlab/functional.hpp"

namespace pmt {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Constants, DimensionThree) {
  const Constants c = Constants::make(3);
  EXPECT_EQ(c.n, 3);
  EXPECT_DOUBLE_EQ(c.c_n, 0.125);
  EXPECT_NEAR(c.omega, 4.0 * kPi, 1e-14);
  // 4 / (3 |S^3|^{2/3}) with |S^3| = 2 pi^2.
  const double closed = 4.0 / (3.0 * std::cbrt(4.0 * std::pow(kPi, 4)));
  EXPECT_NEAR(c.sobolev, closed, 1e-8);
  EXPECT_NEAR(sharp_sobolev_closed_form(3), closed, 1e-15);
  EXPECT_THROW(Constants::with_sobolev(1.0, 2), Rejection);
}

TEST(Constants, HigherDimensionsMatchClosedForm) {
  for (int n : {4, 5, 6}) {
    const BubbleMaximum b = maximise_bubble_quotient(n);
    EXPECT_NEAR(b.exponent, 0.5 * (n - 2), 1e-3) << n;
    EXPECT_NEAR(b.quotient / sharp_sobolev_closed_form(n), 1.0, 1e-8) << n;
  }
}

TEST(Bubble, QuotientMaximisedAtHalf) {
  const double best = bubble_quotient(3, 0.5);
  for (double p : {0.3, 0.4, 0.6, 0.8}) EXPECT_LT(bubble_quotient(3, p), best);
}

TEST(Bubble, GridQuotientNearSharpConstant) {
  const Grid g = Grid::make(8.0, 97, 3.0, 1);
  const double lambda = 0.5;
  const ScalarField phi = sample(
      [&](const Vec3& x) { return 1.0 / std::sqrt(1.0 + dot(x, x) / (lambda * lambda)); }, g);
  const double q = rayleigh_quotient(phi, MetricField(g, Sym3::identity()));
  EXPECT_GE(q, 0.95 * sharp_sobolev_closed_form(3));
}

TEST(Rayleigh, CorpusRespectsSobolevInequality) {
  const Grid g = Grid::make(8.0, 49, 3.0, 1);
  const double s3 = sharp_sobolev_closed_form(3);
  const MetricField flat(g, Sym3::identity());
  for (const TestFunction& phi : test_function_corpus(g, 9, 10)) EXPECT_LE(rayleigh_quotient(phi.values, flat), s3);
}

TEST(Rayleigh, InvariantUnderMetricDilation) {
  // In dimension three both norms scale by c under g -> c^2 g.
  const Grid g = Grid::make(8.0, 33, 3.0, 1);
  const ScalarField phi = sample([](const Vec3& x) { return radial_bump(x, {0, 0, 0}, 3.0); }, g);
  const double q1 = rayleigh_quotient(phi, MetricField(g, Sym3::identity()));
  const double q4 = rayleigh_quotient(phi, MetricField(g, Sym3::scaled_identity(4.0)));
  EXPECT_NEAR(q4, q1, 1e-12 * q1);
}

TEST(SyCondition, BoundaryValuePasses) {
  const Constants c = Constants::with_sobolev(0.1);
  const SyCondition at = sy_condition(4.0, 1.0, c);
  EXPECT_EQ(at.value, 0.5);
  EXPECT_TRUE(at.pass);
  EXPECT_FALSE(sy_condition(4.0, 1.0 + 1e-12, c).pass);
  EXPECT_TRUE(sy_condition(4.0, 0.0, c).pass);
  EXPECT_THROW(sy_condition(-1.0, 1.0, c), Rejection);
  EXPECT_THROW(sy_condition(1.0, -1.0, c), Rejection);
}

TEST(Pairing, BilinearInCurvatureQuadraticInPhi) {
  const Grid g = Grid::make(8.0, 33, 3.0, 1);
  const MetricField metric = sample([](const Vec3& x) { return Sym3::scaled_identity(1.0 + 0.01 * dot(x, x)); }, g);
  const ScalarField s1 = sample([](const Vec3& x) { return std::sin(x[0]); }, g.with_ghost(0));
  const ScalarField s2 = sample([](const Vec3& x) { return x[1] * x[2]; }, g.with_ghost(0));
  ScalarField mix(g.with_ghost(0));
  for (std::size_t q = 0; q < mix.values().size(); ++q) mix.values()[q] = 2.0 * s1.values()[q] - 3.0 * s2.values()[q];
  const auto corpus = test_function_corpus(g, 1, 2);
  for (const TestFunction& phi : corpus) {
    const double p1 = distributional_pairing(s1, phi, metric);
    const double p2 = distributional_pairing(s2, phi, metric);
    EXPECT_NEAR(distributional_pairing(mix, phi, metric), 2.0 * p1 - 3.0 * p2, 1e-10 * (1 + std::abs(p1) + std::abs(p2)));
    TestFunction scaled{phi.values, phi.margin};
    for (double& v : scaled.values.values()) v *= 3.0;
    EXPECT_NEAR(distributional_pairing(s1, scaled, metric), 9.0 * p1, 1e-10 * (1 + std::abs(p1)));
  }
}

TEST(Pairing, RejectsSupportInMargin) {
  const Grid g = Grid::make(8.0, 33, 3.0, 1);
  const MetricField metric(g, Sym3::identity());
  const ScalarField s(g.with_ghost(0), 1.0);
  TestFunction phi{ScalarField(g, 0.0), 2};
  phi.values(1, 16, 16) = 1.0;
  EXPECT_THROW(distributional_pairing(s, phi, metric), Rejection);
  phi.values(1, 16, 16) = 0.0;
  phi.values(2, 16, 16) = 1.0;
  EXPECT_NO_THROW(distributional_pairing(s, phi, metric));
}

TEST(Corpus, SizeDeterminismAndSupport) {
  const Grid g = Grid::make(8.0, 33, 3.0, 2);
  const auto a = test_function_corpus(g, 42);
  const auto b = test_function_corpus(g, 42);
  const auto c = test_function_corpus(g, 43);
  ASSERT_EQ(a.size(), 23u);
  EXPECT_EQ(a[0].values.grid().ghost(), 1);
  bool differs = false;
  for (std::size_t f = 0; f < a.size(); ++f) {
    for (std::size_t q = 0; q < a[f].values.values().size(); ++q) {
      EXPECT_EQ(a[f].values.values()[q], b[f].values.values()[q]);
      if (a[f].values.values()[q] != c[f].values.values()[q]) differs = true;
    }
    for (int k = -1; k < 34; ++k)
      for (int j = -1; j < 34; ++j)
        for (int i = -1; i < 34; ++i)
          if (norm(g.position(i, j, k)) > 6.0) EXPECT_EQ(a[f].values(i, j, k), 0.0);
  }
  EXPECT_TRUE(differs);
}

TEST(SobolevUpperBound, ScalesWithEquivalenceFactor) {
  const Grid g = Grid::make(8.0, 17, 3.0, 0);
  const Constants c = Constants::with_sobolev(0.2);
  EXPECT_DOUBLE_EQ(sobolev_upper_bound(MetricField(g, Sym3::identity()), c), 0.2);
  EXPECT_DOUBLE_EQ(sobolev_upper_bound(MetricField(g, Sym3::diagonal(2.0, 1.0, 1.0)), c), 8.0 * 0.2);
}

TEST(UnitUniform, Range) {
  EXPECT_EQ(unit_uniform(0), 0.0);
  EXPECT_LT(unit_uniform(~0ull), 1.0);
  EXPECT_EQ(unit_uniform(1ull << 63), 0.5);
}

}  // namespace
}  // namespace pmt
