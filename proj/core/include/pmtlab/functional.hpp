#pragma once

#include <cstdint>
#include <vector>

#include "pmtlab/field.hpp"

namespace pmt {

struct Constants {
  int n = 3;
  double c_n = 0.125;           // (n - 2) / (4 (n - 1))
  double omega = 0.0;           // area of the unit (n-1)-sphere
  double sobolev = 0.0;         // sharp flat constant S_n

  /// Constants for dimension n; S_n from the bubble maximisation.
  static Constants make(int n = 3);
  /// Same, with a previously calibrated S_n.
  static Constants with_sobolev(double sobolev, int n = 3);
};

/// Closed-form sharp constant 4 / (n (n - 2) |S^n|^{2/n}).
double sharp_sobolev_closed_form(int n);

/// Maximises the flat Rayleigh quotient over phi_p = (1 + r^2)^{-p} by
/// one-dimensional radial quadrature. The maximiser is p = (n - 2) / 2.
struct BubbleMaximum {
  double exponent;
  double quotient;
};
BubbleMaximum maximise_bubble_quotient(int n);

/// Flat Rayleigh quotient of (1 + r^2)^{-p} in dimension n.
double bubble_quotient(int n, double p);

/// Test function: interior nodes carry values, boundary layers are zero.
/// `margin` is the number of outer node layers that must vanish.
struct TestFunction {
  ScalarField values;
  int margin;
};

/// integral of s phi^2 dmu_g. Rejects phi that is non-zero within the margin.
double distributional_pairing(const ScalarField& s, const TestFunction& phi, const MetricField& g);

/// Radial bump 1 - smoothstep(|x - c| / width).
double radial_bump(const Vec3& x, const Vec3& center, double width);

/// Smoothstep bumps at three widths about the origin plus `count` seeded
/// superpositions of three bumps with random centres in K, widths and
/// amplitudes. Sampled with one ghost layer.
std::vector<TestFunction> test_function_corpus(const Grid& grid, std::uint64_t seed, int count = 20,
                                               int margin = 2);

/// ||phi||^2_{L^{2n/(n-2)}(g)} / ||grad phi||^2_{L^2(g)}.
double rayleigh_quotient(const ScalarField& phi, const MetricField& g);

/// Certified upper bound rho_flat^n S_n on the Sobolev constant of g, with
/// rho_flat the equivalence factor of g against the Euclidean metric.
double sobolev_upper_bound(const MetricField& g, const Constants& constants);

struct SyCondition {
  double value;
  bool pass;
};

/// value = c_n c1 ||[s]_-||_{L^{n/2}}; passes iff value <= 1/2.
SyCondition sy_condition(double c1_upper, double sminus_norm, const Constants& constants);

/// Uniform double in [0, 1) from a 64-bit draw; portable across standard
/// libraries.
double unit_uniform(std::uint64_t bits);

}  // namespace pmt
