#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace pmt {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

/// Symmetric 3x3 matrix, packed as (xx, xy, xz, yy, yz, zz).
struct Sym3 {
  std::array<double, 6> c{};

  static constexpr int slot(int i, int j) {
    constexpr int table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return table[i][j];
  }
  static constexpr Sym3 scaled_identity(double s) {
    return Sym3{{s, 0.0, 0.0, s, 0.0, s}};
  }
  static constexpr Sym3 identity() { return scaled_identity(1.0); }
  static constexpr Sym3 diagonal(double a, double b, double d) {
    return Sym3{{a, 0.0, 0.0, b, 0.0, d}};
  }

  constexpr double operator()(int i, int j) const { return c[slot(i, j)]; }
  constexpr double& at(int i, int j) { return c[slot(i, j)]; }

  friend constexpr bool operator==(const Sym3&, const Sym3&) = default;
};

inline Sym3 operator*(double s, const Sym3& m) {
  Sym3 r;
  for (int a = 0; a < 6; ++a) r.c[a] = s * m.c[a];
  return r;
}
inline Sym3 operator+(const Sym3& a, const Sym3& b) {
  Sym3 r;
  for (int k = 0; k < 6; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}
inline Sym3 operator-(const Sym3& a, const Sym3& b) {
  Sym3 r;
  for (int k = 0; k < 6; ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}

inline double det(const Sym3& m) {
  const auto& c = m.c;
  return c[0] * (c[3] * c[5] - c[4] * c[4]) - c[1] * (c[1] * c[5] - c[4] * c[2]) +
         c[2] * (c[1] * c[4] - c[3] * c[2]);
}

/// Inverse via cofactors; empty when the determinant is not positive.
inline std::optional<Sym3> inverse_spd(const Sym3& m) {
  const double d = det(m);
  if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
  const auto& c = m.c;
  const double inv = 1.0 / d;
  Sym3 r;
  r.c[0] = (c[3] * c[5] - c[4] * c[4]) * inv;
  r.c[1] = (c[2] * c[4] - c[1] * c[5]) * inv;
  r.c[2] = (c[1] * c[4] - c[2] * c[3]) * inv;
  r.c[3] = (c[0] * c[5] - c[2] * c[2]) * inv;
  r.c[4] = (c[1] * c[2] - c[0] * c[4]) * inv;
  r.c[5] = (c[0] * c[3] - c[1] * c[1]) * inv;
  return r;
}

inline double quadratic_form(const Sym3& m, const Vec3& v) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += m(i, j) * v[i] * v[j];
  return s;
}

/// Eigenvalues (ascending) by cyclic Jacobi rotations.
std::array<double, 3> eigenvalues(const Sym3& m);

/// Eigenvalues of the pencil (a, b), i.e. of b^{-1} a, for b positive definite.
/// Empty when b has no Cholesky factor.
std::optional<std::array<double, 3>> generalized_eigenvalues(const Sym3& a, const Sym3& b);

}  // namespace pmt
