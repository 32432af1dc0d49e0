#include "pmtlab/sym3.hpp"

#include <algorithm>

namespace pmt {

std::array<double, 3> eigenvalues(const Sym3& m) {
  double a[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);

  for (int sweep = 0; sweep < 50; ++sweep) {
    const double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    const double diag = a[0][0] * a[0][0] + a[1][1] * a[1][1] + a[2][2] * a[2][2];
    if (off <= 1e-34 * diag || off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int r = 0; r < 3; ++r) {
          const double arp = a[r][p], arq = a[r][q];
          a[r][p] = c * arp - s * arq;
          a[r][q] = s * arp + c * arq;
        }
        for (int r = 0; r < 3; ++r) {
          const double apr = a[p][r], aqr = a[q][r];
          a[p][r] = c * apr - s * aqr;
          a[q][r] = s * apr + c * aqr;
        }
      }
    }
  }
  std::array<double, 3> ev{a[0][0], a[1][1], a[2][2]};
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::optional<std::array<double, 3>> generalized_eigenvalues(const Sym3& a, const Sym3& b) {
  // b = L L^T, then the pencil's eigenvalues are those of L^{-1} a L^{-T}.
  double l[3][3] = {};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = b(i, j);
      for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (!(s > 0.0)) return std::nullopt;
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  // Y = L^{-1} a by forward substitution, column by column.
  double y[3][3];
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 3; ++i) {
      double s = a(i, c);
      for (int k = 0; k < i; ++k) s -= l[i][k] * y[k][c];
      y[i][c] = s / l[i][i];
    }
  }
  // M = Y L^{-T}: solve L M^T = Y^T.
  double mt[3][3];
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 3; ++i) {
      double s = y[c][i];
      for (int k = 0; k < i; ++k) s -= l[i][k] * mt[k][c];
      mt[i][c] = s / l[i][i];
    }
  }
  Sym3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) m.at(i, j) = 0.5 * (mt[i][j] + mt[j][i]);
  return eigenvalues(m);
}

}  // namespace pmt
