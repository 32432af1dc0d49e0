#include "pmtlab/metric_zoo.hpp"

#include <cmath>
#include <limits>

#include "pmtlab/curvature.hpp"
#include "pmtlab/quadrature.hpp"

namespace pmt {

namespace {

constexpr double kInvCn = 8.0;  // 1 / c_3

}  // namespace

AnalyticMetric conformally_flat(std::string name, ScalarFn u, std::function<Vec3(const Vec3&)> grad_u,
                                std::optional<ScalarFn> scalar_curvature,
                                std::optional<double> mass) {
  AnalyticMetric m;
  m.name = std::move(name);
  m.metric = [u](const Vec3& x) {
    const double v = u(x);
    return Sym3::scaled_identity(v * v * v * v);
  };
  m.scalar_curvature = std::move(scalar_curvature);
  m.mass = mass;
  m.conformal_factor = std::move(u);
  m.conformal_gradient = std::move(grad_u);
  return m;
}

AnalyticMetric flat() {
  AnalyticMetric m = conformally_flat(
      "flat", [](const Vec3&) { return 1.0; }, [](const Vec3&) { return Vec3{0.0, 0.0, 0.0}; },
      ScalarFn([](const Vec3&) { return 0.0; }), 0.0);
  m.metric = [](const Vec3&) { return Sym3::identity(); };
  m.holder_exponent = 1.0;
  return m;
}

AnalyticMetric schwarzschild_isotropic(double mass, const Vec3& center) {
  if (!(mass > 0.0)) throw Rejection("schwarzschild_isotropic: mass must be positive");
  auto u = [mass, center](const Vec3& x) {
    const double r = norm(x - center);
    if (r == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return 1.0 + mass / (2.0 * r);
  };
  auto grad = [mass, center](const Vec3& x) {
    const Vec3 d = x - center;
    const double r = norm(d);
    return (-mass / (2.0 * r * r * r)) * d;
  };
  AnalyticMetric m = conformally_flat("schwarzschild", u, grad,
                                      ScalarFn([](const Vec3&) { return 0.0; }), mass);
  m.holder_exponent = 1.0;
  return m;
}

double RoughProfile::exterior_coefficient() const { return std::pow(r0, 3.0 - beta) / (3.0 - beta); }

double RoughProfile::value(double r) const {
  if (r >= r0) return exterior_coefficient() / r;
  const double a = std::pow(r0, 2.0 - beta) / (2.0 - beta);
  return a - std::pow(r, 2.0 - beta) / ((2.0 - beta) * (3.0 - beta));
}

double RoughProfile::derivative(double r) const {
  if (r >= r0) return -exterior_coefficient() / (r * r);
  return -std::pow(r, 1.0 - beta) / (3.0 - beta);
}

double RoughProfile::source(double r) const { return r < r0 ? std::pow(r, -beta) : 0.0; }

AnalyticMetric rough_conformal_unchecked(const RoughConformalSpec& spec) {
  const RoughProfile prof{spec.beta, spec.r0};
  const double eps = spec.epsilon;
  const Vec3 c = spec.center;
  auto u = [prof, eps, c](const Vec3& x) { return 1.0 + eps * prof.value(norm(x - c)); };
  auto grad = [prof, eps, c](const Vec3& x) {
    const Vec3 d = x - c;
    const double r = norm(d);
    if (r == 0.0) return Vec3{0.0, 0.0, 0.0};
    return (eps * prof.derivative(r) / r) * d;
  };
  auto s = [prof, eps, c](const Vec3& x) {
    const double r = norm(x - c);
    const double f = prof.source(r);
    if (f == 0.0) return 0.0;
    const double uv = 1.0 + eps * prof.value(r);
    return kInvCn * eps * f / std::pow(uv, 5);
  };
  AnalyticMetric m = conformally_flat("rough_conformal", u, grad, ScalarFn(s),
                                      2.0 * eps * prof.exterior_coefficient());
  m.smooth_outside = norm(c) + spec.r0;
  m.holder_exponent = std::min(1.0, 2.0 - spec.beta);
  return m;
}

AnalyticMetric rough_conformal(const RoughConformalSpec& spec) {
  if (!(spec.beta > 1.0 && spec.beta < 2.0))
    throw Rejection("rough_conformal: beta must lie in (1, 2)");
  if (!(spec.epsilon > 0.0)) throw Rejection("rough_conformal: epsilon must be positive");
  if (!(spec.r0 > 0.0)) throw Rejection("rough_conformal: r0 must be positive");
  // v >= 0, so u = 1 + eps v > 1/2 holds for eps > 0; kept as a guard.
  const RoughProfile prof{spec.beta, spec.r0};
  if (1.0 + spec.epsilon * std::min(0.0, prof.value(spec.r0)) <= 0.5)
    throw Rejection("rough_conformal: conformal factor not bounded below by 1/2");
  return rough_conformal_unchecked(spec);
}

namespace {

double connection_frobenius(const AnalyticMetric& m, const Vec3& x) {
  const double u = m.conformal_factor(x);
  const Vec3 a = (1.0 / u) * m.conformal_gradient(x);
  double s = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double g = 2.0 * ((j == k ? a[i] : 0.0) + (i == k ? a[j] : 0.0) - (i == j ? a[k] : 0.0));
        s += g * g;
      }
  return std::sqrt(s);
}

bool close(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < 1e-14) return true;
  return std::abs(a - b) < 0.05 * scale;
}

}  // namespace

RegularityCertificate regularity_certificate(const AnalyticMetric& metric, double compact_radius,
                                             double curvature_exponent, int base_nodes) {
  RegularityCertificate cert;
  const Region k_region = Region::compact();
  double spacing = 2.0 * 2.25 * compact_radius / (base_nodes - 1);
  for (int level = 0; level < 3; ++level) {
    // Even node counts keep the origin at a cell centre on every level.
    int nodes = static_cast<int>(std::ceil(2.0 * 2.25 * compact_radius / spacing)) + 1;
    if (nodes % 2 != 0) ++nodes;
    const bool closed_form = metric.conformally_flat();
    const Grid grid = Grid::make(0.5 * spacing * (nodes - 1), nodes, compact_radius, closed_form ? 0 : 2);
    const MetricField g = sample(metric.metric, grid);
    ScalarField gamma(grid.with_ghost(0)), s(grid.with_ghost(0));
    if (closed_form) {
      gamma = sample([&](const Vec3& x) { return connection_frobenius(metric, x); }, grid);
    } else {
      const ChristoffelField chr = christoffel(g);
      for (int k = 0; k < nodes; ++k)
        for (int j = 0; j < nodes; ++j)
          for (int i = 0; i < nodes; ++i) {
            double acc = 0.0;
            for (double v : chr(i, j, k)) acc += v * v;
            gamma(i, j, k) = std::sqrt(acc);
          }
    }
    if (metric.scalar_curvature) {
      s = regrid(sample(*metric.scalar_curvature, grid), grid.with_ghost(0));
    } else {
      s = regrid(scalar_curvature_fd(g), grid.with_ghost(0));
    }
    const MetricField g0 = regrid(g, grid.with_ghost(0));
    cert.levels.push_back({grid.spacing(), lp_norm(regrid(gamma, grid.with_ghost(0)), 2.0 * curvature_exponent, g0, k_region),
                           lp_norm(s, curvature_exponent, g0, k_region)});
    spacing *= 0.5;
  }
  cert.connection_convergent = close(cert.levels[0].connection_norm, cert.levels[1].connection_norm) &&
                               close(cert.levels[1].connection_norm, cert.levels[2].connection_norm);
  cert.curvature_convergent = close(cert.levels[0].curvature_norm, cert.levels[1].curvature_norm) &&
                              close(cert.levels[1].curvature_norm, cert.levels[2].curvature_norm);
  return cert;
}

AnalyticMetric make_family(const std::string& name, const std::map<std::string, double>& params) {
  auto get = [&](const std::string& key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "flat") return flat();
  if (name == "schwarzschild") return schwarzschild_isotropic(get("mass", 1.0));
  if (name == "rough_conformal") {
    RoughConformalSpec spec;
    spec.epsilon = get("epsilon", spec.epsilon);
    spec.beta = get("beta", spec.beta);
    spec.r0 = get("r0", spec.r0);
    spec.center = {get("center_x", 0.0), get("center_y", 0.0), get("center_z", 0.0)};
    return rough_conformal(spec);
  }
  throw Rejection("unknown metric family '" + name + "'");
}

}  // namespace pmt
