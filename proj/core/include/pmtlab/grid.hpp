#pragma once

#include <cstddef>
#include <string>

#include "pmtlab/sym3.hpp"

namespace pmt {

/// Truncated Cartesian domain [-R, R]^3 sampled by N nodes per axis, with
/// `ghost` extra layers on each side. Node index i runs over
/// [-ghost, N + ghost); interior nodes are [0, N).
///
/// The compact set K is the closed coordinate ball of radius compact_radius.
class Grid {
 public:
  static constexpr int dim = 3;

  /// Validates N >= 17, R > 0, 0 < R_K < R/2 and ghost >= 0.
  static Grid make(double extent, int nodes, double compact_radius, int ghost = 2);

  double extent() const { return extent_; }
  int nodes() const { return nodes_; }
  double spacing() const { return spacing_; }
  double compact_radius() const { return compact_radius_; }
  int ghost() const { return ghost_; }

  /// Same nodes, different ghost width.
  Grid with_ghost(int ghost) const;

  int stride() const { return nodes_ + 2 * ghost_; }
  std::size_t size() const {
    const auto s = static_cast<std::size_t>(stride());
    return s * s * s;
  }
  bool holds(int i, int j, int k) const {
    return i >= -ghost_ && j >= -ghost_ && k >= -ghost_ && i < nodes_ + ghost_ &&
           j < nodes_ + ghost_ && k < nodes_ + ghost_;
  }
  bool interior(int i, int j, int k) const {
    return i >= 0 && j >= 0 && k >= 0 && i < nodes_ && j < nodes_ && k < nodes_;
  }
  std::size_t index(int i, int j, int k) const {
    const auto s = static_cast<std::size_t>(stride());
    return (static_cast<std::size_t>(k + ghost_) * s + static_cast<std::size_t>(j + ghost_)) * s +
           static_cast<std::size_t>(i + ghost_);
  }
  double coord(int i) const { return -extent_ + i * spacing_; }
  Vec3 position(int i, int j, int k) const { return {coord(i), coord(j), coord(k)}; }

  /// Trapezoid weight of an interior index along one axis.
  double trapezoid(int i) const { return (i == 0 || i == nodes_ - 1) ? 0.5 : 1.0; }

  bool in_compact(const Vec3& x) const { return norm(x) <= compact_radius_; }

  std::string describe(int i, int j, int k) const;

  bool same_nodes(const Grid& o) const {
    return extent_ == o.extent_ && nodes_ == o.nodes_ && compact_radius_ == o.compact_radius_;
  }

 private:
  Grid(double extent, int nodes, double compact_radius, int ghost);

  double extent_;
  int nodes_;
  double spacing_;
  double compact_radius_;
  int ghost_;
};

}  // namespace pmt
