#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pmtlab/conformal.hpp"
#include "pmtlab/sphere.hpp"

namespace pmt {
namespace {

const Constants kConstants = Constants::with_sobolev(sharp_sobolev_closed_form(3));
const std::vector<double> kFit{4.5, 7.0};

// u = 1 + a (1 + r^2)^{-1/2} solves Lap u + V u = 0 with
// V = 3 a (1 + r^2)^{-5/2} / u.
struct Manufactured {
  double a;
  double w(const Vec3& x) const { return a / std::sqrt(1.0 + dot(x, x)); }
  double potential(const Vec3& x) const {
    const double q = 1.0 + dot(x, x);
    return 3.0 * a * std::pow(q, -2.5) / (1.0 + w(x));
  }
};

ScalarField sminus_for(const Manufactured& m, const Grid& g) {
  return sample([&](const Vec3& x) { return m.potential(x) / kConstants.c_n; }, g.with_ghost(0));
}

TEST(EllipticOperator, ExactOnConstantsAndQuadratics) {
  const Grid g = Grid::make(8.0, 33, 3.0, 1);
  const MetricField flat(g, Sym3::identity());
  const EllipticOperator op = assemble_operator(flat, ScalarField(g.with_ghost(0), 0.0), kConstants);
  EXPECT_TRUE(op.homogeneous());
  const ScalarField one = op.evaluate(ScalarField(g.with_ghost(0), 1.0));
  const ScalarField quad = op.evaluate(sample([](const Vec3& x) { return x[0] * x[0]; }, g.with_ghost(0)));
  const ScalarField mixed = op.evaluate(sample([](const Vec3& x) { return x[0] * x[1] + x[2]; }, g.with_ghost(0)));
  for (int k = 2; k < 31; ++k)
    for (int j = 2; j < 31; ++j)
      for (int i = 2; i < 31; ++i) {
        EXPECT_NEAR(one(i, j, k), 0.0, 1e-12);
        EXPECT_NEAR(quad(i, j, k), 2.0, 1e-10);
        EXPECT_NEAR(mixed(i, j, k), 0.0, 1e-10);
      }
}

TEST(EllipticOperator, SymmetricPositiveDefinite) {
  const Grid g = Grid::make(8.0, 17, 3.0, 1);
  const MetricField metric =
      sample([](const Vec3& x) { Sym3 m = Sym3::scaled_identity(1.0 + 0.02 * dot(x, x)); m.at(0, 2) = 0.1; return m; }, g);
  const EllipticOperator op = assemble_operator(metric, sminus_for({0.2}, g), kConstants);
  EXPECT_FALSE(op.homogeneous());
  ScalarField x(g), y(g), ax(g), ay(g);
  for (int k = 0; k < 17; ++k)
    for (int j = 0; j < 17; ++j)
      for (int i = 0; i < 17; ++i) {
        x(i, j, k) = std::sin(0.3 * i + 0.7 * j - 0.2 * k);
        y(i, j, k) = std::cos(0.5 * i - 0.1 * j + 0.9 * k);
      }
  op.apply(x, ax);
  op.apply(y, ay);
  double xay = 0.0, yax = 0.0, xax = 0.0;
  for (int k = 0; k < 17; ++k)
    for (int j = 0; j < 17; ++j)
      for (int i = 0; i < 17; ++i) {
        xay += x(i, j, k) * ay(i, j, k);
        yax += y(i, j, k) * ax(i, j, k);
        xax += x(i, j, k) * ax(i, j, k);
      }
  EXPECT_NEAR(xay, yax, 1e-10 * std::abs(xay));
  EXPECT_GT(xax, 0.0);
}

TEST(Solve, ZeroPotentialGivesTrivialSolution) {
  const Grid g = Grid::make(8.0, 17, 3.0, 2);
  const MetricField flat(g, Sym3::identity());
  const EllipticOperator op = assemble_operator(flat, ScalarField(g.with_ghost(0), 0.0), kConstants);
  const ConformalSolution s = solve_conformal_factor(op, flat, {}, kFit);
  for (double v : s.w.values()) EXPECT_EQ(v, 0.0);
  for (double v : s.u.values()) EXPECT_EQ(v, 1.0);
  EXPECT_EQ(s.A, 0.0);
  EXPECT_EQ(s.iterations, 0);
  EXPECT_EQ(s.w.grid().ghost(), 2);
}

double manufactured_error(int nodes, double* A) {
  const Manufactured m{0.3};
  const Grid g = Grid::make(8.0, nodes, 3.0, 2);
  const MetricField flat(g, Sym3::identity());
  const EllipticOperator op = assemble_operator(flat, sminus_for(m, g), kConstants);
  const ConformalSolution s = solve_conformal_factor(op, flat, {1e-11, 20000}, kFit);
  EXPECT_LT(s.residual, 1e-11);
  double err = 0.0;
  for (int k = 0; k < nodes; ++k)
    for (int j = 0; j < nodes; ++j)
      for (int i = 0; i < nodes; ++i) err = std::max(err, std::abs(s.w(i, j, k) - m.w(g.position(i, j, k))));
  if (A != nullptr) *A = s.A;
  return err;
}

TEST(Solve, ManufacturedSolutionConverges) {
  double A = 0.0;
  const double e1 = manufactured_error(33, nullptr);
  const double e2 = manufactured_error(65, &A);
  // h halves: a second-order scheme gains a factor near 4.
  EXPECT_GT(e1 / e2, 3.0);
  EXPECT_NEAR(A, 0.3, 2e-3);
}

TEST(Solve, RejectsIndefiniteOperatorOrNegativeFactor) {
  const Grid g = Grid::make(8.0, 17, 3.0, 2);
  const MetricField flat(g, Sym3::identity());
  const ScalarField huge = sample([](const Vec3& x) { return dot(x, x) < 9.0 ? 40.0 : 0.0; }, g.with_ghost(0));
  const EllipticOperator op = assemble_operator(flat, huge, kConstants);
  EXPECT_THROW(solve_conformal_factor(op, flat, {}, kFit), Rejection);
}

TEST(Solve, RejectsStagnation) {
  const Grid g = Grid::make(8.0, 33, 3.0, 2);
  const MetricField flat(g, Sym3::identity());
  const EllipticOperator op = assemble_operator(flat, sminus_for({0.3}, g), kConstants);
  EXPECT_THROW(solve_conformal_factor(op, flat, {1e-12, 3}, kFit), Rejection);
}

TEST(Assemble, RejectsNegativePotentialAndMismatchedGrids) {
  const Grid g = Grid::make(8.0, 17, 3.0, 1);
  const MetricField flat(g, Sym3::identity());
  ScalarField s(g.with_ghost(0), 0.0);
  s(3, 3, 3) = -1.0;
  EXPECT_THROW(assemble_operator(flat, s, kConstants), Rejection);
  EXPECT_THROW(assemble_operator(flat, ScalarField(Grid::make(8.0, 19, 3.0, 0)), kConstants), Rejection);
}

TEST(ExtractA, InverseRadiusProfiles) {
  const Grid g = Grid::make(8.0, 64, 3.0, 1);
  const ScalarField pure = sample([](const Vec3& x) { return 0.7 / norm(x); }, g);
  EXPECT_NEAR(extract_A(pure, kFit), 0.7, 2e-3);
  const ScalarField mixed = sample([](const Vec3& x) { const double r = norm(x); return 1.0 / r + 1.0 / (r * r); }, g);
  const double two = extract_A(mixed, kFit);
  const double one = 7.0 * spherical_average(mixed, 7.0);
  EXPECT_LT(std::abs(two - 1.0), std::abs(one - 1.0));
  EXPECT_NEAR(two, 1.0, 5e-3);
  EXPECT_THROW(extract_A(pure, std::vector<double>{5.0}), Rejection);
  EXPECT_THROW(extract_A(pure, std::vector<double>{2.0, 5.0}), Rejection);
}

TEST(WBounds, QuadraticInSobolevConstant) {
  const Grid g = Grid::make(8.0, 33, 3.0, 2);
  const MetricField flat(g, Sym3::identity());
  const ScalarField sm = sminus_for({0.3}, g);
  const EllipticOperator op = assemble_operator(flat, sm, kConstants);
  const ConformalSolution s = solve_conformal_factor(op, flat, {}, kFit);
  const WBounds b1 = verify_w_bounds(s, sm, flat, 1.0, kConstants);
  const WBounds b2 = verify_w_bounds(s, sm, flat, 2.0, kConstants);
  EXPECT_NEAR(b2.w_rhs, 4.0 * b1.w_rhs, 1e-14 * b2.w_rhs);
  EXPECT_EQ(b1.dw_rhs, b2.dw_rhs);
  EXPECT_EQ(b1.w_lhs, s.w_norm);
  EXPECT_TRUE(b1.dw_pass);
}

TEST(Solve, NonNegativePotentialGivesNonNegativeCorrection) {
  const Grid g = Grid::make(8.0, 33, 3.0, 2);
  const MetricField flat(g, Sym3::identity());
  const EllipticOperator op = assemble_operator(flat, sminus_for({0.3}, g), kConstants);
  const ConformalSolution s = solve_conformal_factor(op, flat, {}, kFit);
  for (double v : s.w.values()) EXPECT_GE(v, 0.0);
  EXPECT_GT(s.dw_norm_sq, 0.0);
  EXPECT_GT(s.A, 0.0);
}

}  // namespace
}  // namespace pmt
