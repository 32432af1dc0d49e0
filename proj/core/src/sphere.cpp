#include "pmtlab/sphere.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "pmtlab/parallel.hpp"

namespace pmt {

const SpherePoints& SpherePoints::standard() {
  static const SpherePoints points = [] {
    constexpr int n_theta = 24;
    constexpr int n_phi = 2 * n_theta;
    using Rule = boost::math::quadrature::gauss<double, n_theta>;
    std::vector<double> mu, w;
    const auto& absc = Rule::abscissa();
    const auto& wts = Rule::weights();
    for (std::size_t a = 0; a < absc.size(); ++a) {
      mu.push_back(absc[a]);
      w.push_back(wts[a]);
      if (absc[a] != 0.0) {
        mu.push_back(-absc[a]);
        w.push_back(wts[a]);
      }
    }
    SpherePoints sp;
    const double dphi = 2.0 * std::numbers::pi / n_phi;
    for (std::size_t a = 0; a < mu.size(); ++a) {
      const double st = std::sqrt(1.0 - mu[a] * mu[a]);
      for (int b = 0; b < n_phi; ++b) {
        // Half-step offset keeps points off the coordinate planes.
        const double phi = (b + 0.5) * dphi;
        sp.directions.push_back({st * std::cos(phi), st * std::sin(phi), mu[a]});
        sp.weights.push_back(w[a] * dphi);
      }
    }
    return sp;
  }();
  return points;
}

double spherical_average(const ScalarField& f, double r) {
  const auto& sp = SpherePoints::standard();
  CompensatedSum acc;
  for (std::size_t q = 0; q < sp.directions.size(); ++q) {
    const double v = trilinear<double>(f.grid(), r * sp.directions[q],
                                       [&](int i, int j, int k) { return f(i, j, k); });
    acc.add(sp.weights[q] * v);
  }
  return acc.value() / (4.0 * std::numbers::pi);
}

double extrapolate_inverse_radius(std::span<const double> radii, std::span<const double> values) {
  if (radii.size() != values.size() || radii.empty())
    throw Rejection("extrapolation needs matching, non-empty radius and value lists");
  // Lagrange interpolation in s = 1/r evaluated at s = 0.
  double result = 0.0;
  for (std::size_t a = 0; a < radii.size(); ++a) {
    double basis = 1.0;
    const double sa = 1.0 / radii[a];
    for (std::size_t b = 0; b < radii.size(); ++b) {
      if (b == a) continue;
      const double sb = 1.0 / radii[b];
      if (sa == sb) throw Rejection("extrapolation radii must be distinct");
      basis *= (0.0 - sb) / (sa - sb);
    }
    result += basis * values[a];
  }
  return result;
}

}  // namespace pmt
