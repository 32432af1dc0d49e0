#pragma once

#include <functional>

#include "pmtlab/field.hpp"

namespace pmt {

/// Node mask for integrals. Masks are node-centre based: a node belongs to K
/// iff |x| <= R_K.
class Region {
 public:
  enum class Kind { all, compact, exterior, custom };

  static Region all() { return Region(Kind::all, {}); }
  static Region compact() { return Region(Kind::compact, {}); }
  static Region exterior() { return Region(Kind::exterior, {}); }
  static Region custom(std::function<bool(const Vec3&)> mask) {
    return Region(Kind::custom, std::move(mask));
  }

  bool contains(const Grid& grid, const Vec3& x) const;
  Kind kind() const { return kind_; }

 private:
  Region(Kind kind, std::function<bool(const Vec3&)> mask) : kind_(kind), mask_(std::move(mask)) {}
  Kind kind_;
  std::function<bool(const Vec3&)> mask_;
};

/// Volume weight sqrt(det g) at a node; rejects a degenerate metric.
double volume_density(const MetricField& g, int i, int j, int k);

/// Sum over interior nodes in `region` of integrand(i,j,k) * sqrt(det g) *
/// h^3 * trapezoid weights, with compensated summation in fixed node order.
/// A null metric means the flat volume element.
double integrate(const Grid& grid, const std::function<double(int, int, int)>& integrand,
                 const MetricField* g, const Region& region);

/// (integral of |f|^p dmu_g over region)^{1/p}. Rejects p < 1.
double lp_norm(const ScalarField& f, double p, const MetricField& g, const Region& region);

/// Flat-volume variant.
double lp_norm_flat(const ScalarField& f, double p, const Region& region);

}  // namespace pmt
