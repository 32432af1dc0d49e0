#pragma once

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pmtlab/error.hpp"
#include "pmtlab/grid.hpp"
#include "pmtlab/sym3.hpp"

namespace pmt {

/// Node-sampled data on a Grid, ghost layers included.
template <typename T>
class Field {
 public:
  using value_type = T;

  explicit Field(Grid grid, T fill = T{}) : grid_(std::move(grid)), values_(grid_.size(), fill) {}

  const Grid& grid() const { return grid_; }
  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }

  const T& operator()(int i, int j, int k) const { return values_[grid_.index(i, j, k)]; }
  T& operator()(int i, int j, int k) { return values_[grid_.index(i, j, k)]; }

 private:
  Grid grid_;
  std::vector<T> values_;
};

using ScalarField = Field<double>;
using MetricField = Field<Sym3>;

using ScalarFn = std::function<double(const Vec3&)>;
using MetricFn = std::function<Sym3(const Vec3&)>;

/// Evaluates a closed form at every node, ghosts included. Non-finite values
/// are rejected with the node named.
ScalarField sample(const ScalarFn& fn, const Grid& grid);
MetricField sample(const MetricFn& fn, const Grid& grid);

/// Copy of `f` restricted to (or zero-padded up to) the ghost width of `target`.
template <typename T>
Field<T> regrid(const Field<T>& f, const Grid& target) {
  Field<T> out(target);
  const Grid& g = f.grid();
  const int lo = -target.ghost(), hi = target.nodes() + target.ghost();
  for (int k = lo; k < hi; ++k)
    for (int j = lo; j < hi; ++j)
      for (int i = lo; i < hi; ++i)
        if (g.holds(i, j, k)) out(i, j, k) = f(i, j, k);
  return out;
}

/// Smallest eigenvalue over interior nodes; rejects a non-finite component.
double min_eigenvalue(const MetricField& g);

/// Fills ghost layers of a decaying scalar assuming f = c + a/r beyond the
/// boundary, with c the declared asymptotic value. The coefficient a is read
/// from the nearest boundary node.
void extrapolate_ghosts(ScalarField& f, double asymptotic_value);

}  // namespace pmt
