#include "pmtlab/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pmtlab/curvature.hpp"
#include "pmtlab/parallel.hpp"
#include "pmtlab/quadrature.hpp"

namespace pmt {

double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double x2 = x * x, x4 = x2 * x2;
  return x4 * (35.0 + x * (-84.0 + x * (70.0 - 20.0 * x)));
}

double bump_kernel(double d, double t) {
  const double q = d / t;
  if (q >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - q * q));
}

ChartCover::ChartCover(double compact_radius)
    : compact_radius_(compact_radius), blend_width_(0.25 * compact_radius) {
  const double a = compact_radius_ + blend_width_;
  const double d = blend_width_;
  charts_[0] = Box{{-a, -a, -a}, {a, a, d}};
  charts_[1] = Box{{-a, -a, -d}, {a, a, a}};
}

double ChartCover::end_weight(const Vec3& x) const {
  return smoothstep((norm(x) - compact_radius_) / blend_width_);
}

double ChartCover::chart_weight(int chart, const Vec3& x) const {
  const double inner = 1.0 - end_weight(x);
  if (inner == 0.0) return 0.0;
  const double split = 1.0 - smoothstep((x[2] + 0.5 * blend_width_) / blend_width_);
  const double w = chart == 0 ? inner * split : inner * (1.0 - split);
  return charts_[static_cast<std::size_t>(chart)].contains(x) ? w : 0.0;
}

namespace {

struct Stencil {
  std::vector<std::array<int, 3>> offsets;
  std::vector<double> weights;
  int reach = 0;
};

Stencil make_stencil(double t, double h) {
  Stencil st;
  const int reach = static_cast<int>(std::floor(t / h));
  st.reach = reach;
  for (int c = -reach; c <= reach; ++c)
    for (int b = -reach; b <= reach; ++b)
      for (int a = -reach; a <= reach; ++a) {
        const double d = h * std::sqrt(static_cast<double>(a * a + b * b + c * c));
        const double w = bump_kernel(d, t);
        if (w > 0.0) {
          st.offsets.push_back({a, b, c});
          st.weights.push_back(w);
        }
      }
  return st;
}

// Chart-local mollification (eta_t * g)(x): weighted sum divided by the
// weight total, so constants are reproduced bitwise.
Sym3 chart_convolve(const MetricField& g, const Stencil& st, int i, int j, int k) {
  Sym3 acc{};
  double total = 0.0;
  for (std::size_t q = 0; q < st.offsets.size(); ++q) {
    const auto& o = st.offsets[q];
    const double w = st.weights[q];
    const Sym3& v = g(i + o[0], j + o[1], k + o[2]);
    for (int a = 0; a < 6; ++a) acc.c[a] += w * v.c[a];
    total += w;
  }
  for (int a = 0; a < 6; ++a) acc.c[a] /= total;
  return acc;
}

}  // namespace

SmoothedMetric mollify_family(const MetricField& g, const ChartCover& cover, double t) {
  if (!(t > 0.0)) throw Rejection("mollify_family: smoothing scale must be positive");
  const Grid& grid = g.grid();
  const double h = grid.spacing();
  const Stencil st = make_stencil(t, h);
  const double reach_radius = cover.compact_radius() + cover.blend_width();
  // Every blended node plus the kernel must stay on stored nodes.
  const double max_coord = reach_radius + st.reach * h;
  if (max_coord > grid.extent() + grid.ghost() * h)
    throw Rejection("mollify_family: smoothing scale too large for ghost support");

  SmoothedMetric out{t, g, 1.0, std::nullopt, std::nullopt};
  MetricField& gt = out.metric;
  const int lo = -grid.ghost(), hi = grid.nodes() + grid.ghost();
  for_each_slab_checked(lo, hi, [&](int k) -> std::string {
    for (int j = lo; j < hi; ++j)
      for (int i = lo; i < hi; ++i) {
        const Vec3 x = grid.position(i, j, k);
        if (cover.untouched(x)) continue;
        const Sym3 base = g(i, j, k);
        Sym3 blended = base;
        std::optional<Sym3> smooth;
        for (int chart = 0; chart < 2; ++chart) {
          const double w = cover.chart_weight(chart, x);
          if (w == 0.0) continue;
          if (!smooth) smooth = chart_convolve(g, st, i, j, k);
          for (int a = 0; a < 6; ++a) blended.c[a] += w * (smooth->c[a] - base.c[a]);
        }
        if (!(eigenvalues(blended)[0] > 0.0))
          return "mollify_family: blended metric not positive definite at " + grid.describe(i, j, k);
        gt(i, j, k) = blended;
      }
    return {};
  });
  out.rho = equivalence_rho(g, gt);
  return out;
}

SmoothedMetric mollify_family(const AnalyticMetric& metric, const Grid& grid, double t) {
  return mollify_family(sample(metric.metric, grid), ChartCover(grid.compact_radius()), t);
}

double equivalence_rho(const MetricField& g, const MetricField& g_t) {
  const Grid& grid = g.grid();
  if (!grid.same_nodes(g_t.grid())) throw Rejection("equivalence_rho: grids differ");
  const int n = grid.nodes();
  std::vector<double> slab(static_cast<std::size_t>(n), 1.0);
  for_each_slab_checked(0, n, [&](int k) -> std::string {
    double r = 1.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Sym3& a = g(i, j, k);
        const Sym3& b = g_t(i, j, k);
        if (a == b) continue;
        const auto ev = generalized_eigenvalues(a, b);
        if (!ev || !((*ev)[0] > 0.0))
          return "equivalence_rho: singular metric at " + grid.describe(i, j, k);
        r = std::max({r, (*ev)[2], 1.0 / (*ev)[0]});
      }
    slab[static_cast<std::size_t>(k)] = r;
    return {};
  });
  return *std::max_element(slab.begin(), slab.end());
}

namespace {

// Radius beyond which the curvature stencil of a node sees only nodes that
// mollification leaves untouched.
double affected_radius(const ChartCover& cover, double h) {
  return cover.compact_radius() + cover.blend_width() + 2.0 * h;
}

}  // namespace

CurvatureReference make_curvature_reference(const AnalyticMetric& metric, const MetricField& g) {
  if (!metric.scalar_curvature)
    throw Rejection("curvature_deficit: family '" + metric.name +
                    "' has no curvature oracle; finite differences of a rough metric are not ground truth");
  const Grid& grid = g.grid();
  const Grid interior = grid.with_ghost(0);
  CurvatureReference ref{regrid(sample(*metric.scalar_curvature, grid), interior), ScalarField(interior)};
  const ChartCover cover(grid.compact_radius());
  const double limit = affected_radius(cover, grid.spacing());
  const int n = grid.nodes();
  for_each_slab_checked(0, n, [&](int k) -> std::string {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (norm(grid.position(i, j, k)) >= limit) continue;
        if (!inverse_spd(g(i, j, k))) return "curvature reference: singular metric at " + grid.describe(i, j, k);
        ref.discrete(i, j, k) = scalar_curvature_at(g, i, j, k);
      }
    return {};
  });
  return ref;
}

ScalarField smoothed_scalar_curvature(const CurvatureReference& ref, const MetricField& g,
                                      const SmoothedMetric& smoothed, const ChartCover& cover) {
  const Grid& grid = g.grid();
  const int n = grid.nodes();
  const double limit = affected_radius(cover, grid.spacing());
  ScalarField s = ref.oracle;
  for_each_slab_checked(0, n, [&](int k) -> std::string {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (norm(grid.position(i, j, k)) >= limit) continue;
        if (!inverse_spd(smoothed.metric(i, j, k)))
          return "smoothed curvature: singular metric at " + grid.describe(i, j, k);
        s(i, j, k) += scalar_curvature_at(smoothed.metric, i, j, k) - ref.discrete(i, j, k);
      }
    return {};
  });
  return s;
}

CurvatureDeficit curvature_deficit(const CurvatureReference& ref, const MetricField& g,
                                   SmoothedMetric& smoothed, const ChartCover& cover) {
  const Grid interior = g.grid().with_ghost(0);
  ScalarField s_t = smoothed_scalar_curvature(ref, g, smoothed, cover);
  ScalarField diff(interior);
  {
    auto d = diff.values();
    auto a = s_t.values();
    auto b = ref.oracle.values();
    for (std::size_t q = 0; q < d.size(); ++q) d[q] = a[q] - b[q];
  }
  const MetricField g0 = regrid(g, interior);
  const MetricField gt0 = regrid(smoothed.metric, interior);
  const ScalarField sminus = negative_part(s_t);
  CurvatureDeficit out;
  out.deficit_compact = lp_norm(diff, 1.5, g0, Region::compact());
  out.deficit_all = lp_norm(diff, 1.5, gt0, Region::all());
  out.sminus_norm = lp_norm(sminus, 1.5, gt0, Region::all());
  out.sminus_norm_65 = lp_norm(sminus, 1.2, gt0, Region::all());
  smoothed.deficit = out;
  smoothed.scalar_curvature = std::move(s_t);
  return out;
}

CurvatureDeficit curvature_deficit(const AnalyticMetric& metric, SmoothedMetric& smoothed, const Grid& grid) {
  const MetricField g = sample(metric.metric, grid);
  const ChartCover cover(grid.compact_radius());
  return curvature_deficit(make_curvature_reference(metric, g), g, smoothed, cover);
}

}  // namespace pmt
