#include "pmtlab/curvature.hpp"

#include <cmath>
#include <string>

#include "pmtlab/parallel.hpp"

namespace pmt {

namespace {

struct MetricJet {
  Sym3 g;
  std::array<Sym3, 3> d;      // d_m g
  std::array<Sym3, 6> dd;     // d_m d_l g, indexed by slot(m, l)
};

MetricJet jet(const MetricField& f, int i, int j, int k, bool second) {
  const double h = f.grid().spacing();
  MetricJet J;
  J.g = f(i, j, k);
  const int off[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int m = 0; m < 3; ++m) {
    const Sym3& p = f(i + off[m][0], j + off[m][1], k + off[m][2]);
    const Sym3& q = f(i - off[m][0], j - off[m][1], k - off[m][2]);
    for (int a = 0; a < 6; ++a) J.d[m].c[a] = (p.c[a] - q.c[a]) / (2.0 * h);
    if (second)
      for (int a = 0; a < 6; ++a) J.dd[Sym3::slot(m, m)].c[a] = (p.c[a] - 2.0 * J.g.c[a] + q.c[a]) / (h * h);
  }
  if (second) {
    for (int m = 0; m < 3; ++m)
      for (int l = m + 1; l < 3; ++l) {
        const int* a = off[m];
        const int* b = off[l];
        const Sym3& pp = f(i + a[0] + b[0], j + a[1] + b[1], k + a[2] + b[2]);
        const Sym3& pm = f(i + a[0] - b[0], j + a[1] - b[1], k + a[2] - b[2]);
        const Sym3& mp = f(i - a[0] + b[0], j - a[1] + b[1], k - a[2] + b[2]);
        const Sym3& mm = f(i - a[0] - b[0], j - a[1] - b[1], k - a[2] - b[2]);
        for (int c = 0; c < 6; ++c)
          J.dd[Sym3::slot(m, l)].c[c] = (pp.c[c] - pm.c[c] - mp.c[c] + mm.c[c]) / (4.0 * h * h);
      }
  }
  return J;
}

// Gamma_{l ij} (first kind) from first derivatives.
inline double gamma_low(const std::array<Sym3, 3>& d, int l, int i, int j) {
  return 0.5 * (d[i](j, l) + d[j](i, l) - d[l](i, j));
}

Christoffel christoffel_from_jet(const MetricJet& J, const Sym3& ginv) {
  Christoffel out{};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        double s = 0.0;
        for (int l = 0; l < 3; ++l) s += ginv(k, l) * gamma_low(J.d, l, i, j);
        out[static_cast<std::size_t>(6 * k + Sym3::slot(i, j))] = s;
      }
  return out;
}

}  // namespace

ChristoffelField christoffel(const MetricField& g) {
  const Grid& in = g.grid();
  if (in.ghost() < 1) throw Rejection("christoffel: derivative requested beyond ghost support");
  const Grid out_grid = in.with_ghost(in.ghost() - 1);
  ChristoffelField out(out_grid);
  const int lo = -out_grid.ghost(), hi = out_grid.nodes() + out_grid.ghost();
  for_each_slab_checked(lo, hi, [&](int k) -> std::string {
    for (int j = lo; j < hi; ++j)
      for (int i = lo; i < hi; ++i) {
        const MetricJet J = jet(g, i, j, k, false);
        const auto ginv = inverse_spd(J.g);
        if (!ginv) return "christoffel: singular metric at " + in.describe(i, j, k);
        out(i, j, k) = christoffel_from_jet(J, *ginv);
      }
    return {};
  });
  return out;
}

double scalar_curvature_at(const MetricField& g, int i, int j, int k) {
  const MetricJet J = jet(g, i, j, k, true);
  const auto ginv_opt = inverse_spd(J.g);
  if (!ginv_opt) throw Rejection("scalar curvature: singular metric at " + g.grid().describe(i, j, k));
  const Sym3& ginv = *ginv_opt;

  const Christoffel G = christoffel_from_jet(J, ginv);
  auto gam = [&](int k2, int a, int b) { return christoffel_at(G, k2, a, b); };

  // d_m g^{kl} = -g^{ka} d_m g_ab g^{bl}
  std::array<Sym3, 3> dginv;
  for (int m = 0; m < 3; ++m)
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) {
        double s = 0.0;
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 3; ++q) s -= ginv(a, p) * J.d[m](p, q) * ginv(q, b);
        dginv[m].at(a, b) = s;
      }

  // d_m Gamma^k_ij
  auto dgamma = [&](int m, int k2, int a, int b) {
    double s = 0.0;
    for (int l = 0; l < 3; ++l) {
      const double second = 0.5 * (J.dd[Sym3::slot(m, a)](b, l) + J.dd[Sym3::slot(m, b)](a, l) -
                                   J.dd[Sym3::slot(m, l)](a, b));
      s += dginv[m](k2, l) * gamma_low(J.d, l, a, b) + ginv(k2, l) * second;
    }
    return s;
  };

  double s = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double gab = ginv(a, b);
      if (gab == 0.0) continue;
      double r = 0.0;
      for (int c = 0; c < 3; ++c) {
        r += dgamma(c, c, a, b) - dgamma(b, c, a, c);
        for (int l = 0; l < 3; ++l) r += gam(c, c, l) * gam(l, a, b) - gam(c, b, l) * gam(l, a, c);
      }
      s += gab * r;
    }
  return s;
}

ScalarField scalar_curvature_fd(const MetricField& g) {
  const Grid& in = g.grid();
  if (in.ghost() < 1) throw Rejection("scalar_curvature_fd: derivative requested beyond ghost support");
  const Grid out_grid = in.with_ghost(in.ghost() - 1);
  ScalarField out(out_grid);
  const int lo = -out_grid.ghost(), hi = out_grid.nodes() + out_grid.ghost();
  for_each_slab_checked(lo, hi, [&](int k) -> std::string {
    for (int j = lo; j < hi; ++j)
      for (int i = lo; i < hi; ++i) {
        if (!inverse_spd(g(i, j, k))) return "scalar_curvature_fd: singular metric at " + in.describe(i, j, k);
        out(i, j, k) = scalar_curvature_at(g, i, j, k);
      }
    return {};
  });
  return out;
}

ScalarField laplace_beltrami(const ScalarField& u, const MetricField& g) {
  const Grid& gu = u.grid();
  if (!gu.same_nodes(g.grid())) throw Rejection("laplace_beltrami: grids differ");
  if (gu.ghost() < 1 || g.grid().ghost() < 1)
    throw Rejection("laplace_beltrami: derivative requested beyond ghost support");
  const int n = gu.nodes();
  const double h = gu.spacing();

  // a = sqrt(det g) g^{-1} and sqrt(det g) on interior nodes plus one layer.
  const Grid coeff_grid = gu.with_ghost(1);
  MetricField a(coeff_grid);
  ScalarField vol(coeff_grid);
  for_each_slab_checked(-1, n + 1, [&](int k) -> std::string {
    for (int j = -1; j < n + 1; ++j)
      for (int i = -1; i < n + 1; ++i) {
        const auto inv = inverse_spd(g(i, j, k));
        if (!inv) return "laplace_beltrami: singular metric at " + gu.describe(i, j, k);
        const double sq = std::sqrt(det(g(i, j, k)));
        a(i, j, k) = sq * *inv;
        vol(i, j, k) = sq;
      }
    return {};
  });

  ScalarField out(gu.with_ghost(0));
  const int e[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for_each_slab(0, n, [&](int k) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double u0 = u(i, j, k);
        double acc = 0.0;
        for (int d = 0; d < 3; ++d) {
          const int* o = e[d];
          const double up = u(i + o[0], j + o[1], k + o[2]);
          const double um = u(i - o[0], j - o[1], k - o[2]);
          const double ap = 0.5 * (a(i, j, k)(d, d) + a(i + o[0], j + o[1], k + o[2])(d, d));
          const double am = 0.5 * (a(i, j, k)(d, d) + a(i - o[0], j - o[1], k - o[2])(d, d));
          acc += ap * (up - u0) - am * (u0 - um);
        }
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 3; ++q) {
            if (p == q) continue;
            const int* ep = e[p];
            const int* eq = e[q];
            // d_p (a^{pq} d_q u), centered at the p-neighbours.
            const int ip = i + ep[0], jp = j + ep[1], kp = k + ep[2];
            const int im = i - ep[0], jm = j - ep[1], km = k - ep[2];
            const double fp = a(ip, jp, kp)(p, q) *
                              (u(ip + eq[0], jp + eq[1], kp + eq[2]) - u(ip - eq[0], jp - eq[1], kp - eq[2]));
            const double fm = a(im, jm, km)(p, q) *
                              (u(im + eq[0], jm + eq[1], km + eq[2]) - u(im - eq[0], jm - eq[1], km - eq[2]));
            acc += 0.25 * (fp - fm);
          }
        out(i, j, k) = acc / (h * h * vol(i, j, k));
      }
  });
  return out;
}

ScalarField scalar_curvature_conformal(const ScalarField& u, const ScalarField* base_s, const MetricField& g) {
  const Grid& gu = u.grid();
  const int n = gu.nodes();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (!(u(i, j, k) > 0.0))
          throw Rejection("scalar_curvature_conformal: non-positive conformal factor at " + gu.describe(i, j, k));
  const ScalarField lap = laplace_beltrami(u, g);
  ScalarField out(gu.with_ghost(0));
  constexpr double inv_cn = 8.0;
  for_each_slab(0, n, [&](int k) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double uv = u(i, j, k);
        const double sb = base_s != nullptr ? (*base_s)(i, j, k) : 0.0;
        const double u2 = uv * uv;
        out(i, j, k) = (-inv_cn * lap(i, j, k) + sb * uv) / (u2 * u2 * uv);
      }
  });
  return out;
}

namespace {

ScalarField map_field(const ScalarField& s, double (*fn)(double)) {
  ScalarField out(s.grid());
  auto in = s.values();
  auto o = out.values();
  for (std::size_t a = 0; a < in.size(); ++a) o[a] = fn(in[a]);
  return out;
}

}  // namespace

ScalarField negative_part(const ScalarField& s) {
  return map_field(s, [](double v) { return v < 0.0 ? -v : 0.0; });
}

ScalarField positive_part(const ScalarField& s) {
  return map_field(s, [](double v) { return v > 0.0 ? v : 0.0; });
}

}  // namespace pmt
