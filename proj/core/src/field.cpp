#include "pmtlab/field.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "pmtlab/parallel.hpp"

namespace pmt {

namespace {

bool finite(double v) { return std::isfinite(v); }
bool finite(const Sym3& m) {
  return std::all_of(m.c.begin(), m.c.end(), [](double v) { return std::isfinite(v); });
}

template <typename T, typename Fn>
Field<T> sample_impl(const Fn& fn, const Grid& grid) {
  Field<T> out(grid);
  const int lo = -grid.ghost(), hi = grid.nodes() + grid.ghost();
  std::vector<long long> bad(static_cast<std::size_t>(hi - lo), -1);
  for_each_slab(lo, hi, [&](int k) {
    for (int j = lo; j < hi; ++j)
      for (int i = lo; i < hi; ++i) {
        const T v = fn(grid.position(i, j, k));
        out(i, j, k) = v;
        if (!finite(v) && bad[static_cast<std::size_t>(k - lo)] < 0)
          bad[static_cast<std::size_t>(k - lo)] = static_cast<long long>(grid.index(i, j, k));
      }
  });
  for (std::size_t s = 0; s < bad.size(); ++s) {
    if (bad[s] < 0) continue;
    const auto idx = static_cast<std::size_t>(bad[s]);
    const auto st = static_cast<std::size_t>(grid.stride());
    const int i = static_cast<int>(idx % st) - grid.ghost();
    const int j = static_cast<int>((idx / st) % st) - grid.ghost();
    const int k = static_cast<int>(idx / (st * st)) - grid.ghost();
    throw Rejection("non-finite sample at " + grid.describe(i, j, k));
  }
  return out;
}

}  // namespace

ScalarField sample(const ScalarFn& fn, const Grid& grid) { return sample_impl<double>(fn, grid); }
MetricField sample(const MetricFn& fn, const Grid& grid) { return sample_impl<Sym3>(fn, grid); }

double min_eigenvalue(const MetricField& g) {
  const Grid& grid = g.grid();
  const int n = grid.nodes();
  std::vector<double> slab_min(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  std::vector<int> bad_row(static_cast<std::size_t>(n), -1);
  for_each_slab(0, n, [&](int k) {
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const auto& v = g(i, j, k);
        if (!finite(v)) {
          bad_row[static_cast<std::size_t>(k)] = j * n + i;
          continue;
        }
        m = std::min(m, eigenvalues(v)[0]);
      }
    slab_min[static_cast<std::size_t>(k)] = m;
  });
  for (int k = 0; k < n; ++k) {
    const int b = bad_row[static_cast<std::size_t>(k)];
    if (b >= 0) throw Rejection("non-finite metric at " + grid.describe(b % n, b / n, k));
  }
  return *std::min_element(slab_min.begin(), slab_min.end());
}

void extrapolate_ghosts(ScalarField& f, double asymptotic_value) {
  const Grid& grid = f.grid();
  const int n = grid.nodes(), gw = grid.ghost();
  auto clamp = [n](int i) { return std::clamp(i, 0, n - 1); };
  for (int k = -gw; k < n + gw; ++k)
    for (int j = -gw; j < n + gw; ++j)
      for (int i = -gw; i < n + gw; ++i) {
        if (grid.interior(i, j, k)) continue;
        const int bi = clamp(i), bj = clamp(j), bk = clamp(k);
        const double rb = norm(grid.position(bi, bj, bk));
        const double r = norm(grid.position(i, j, k));
        const double a = (f(bi, bj, bk) - asymptotic_value) * rb;
        f(i, j, k) = asymptotic_value + a / r;
      }
}

}  // namespace pmt
