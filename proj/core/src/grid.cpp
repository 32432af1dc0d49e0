#include "pmtlab/grid.hpp"

#include <cmath>
#include <sstream>

#include "pmtlab/error.hpp"

namespace pmt {

Grid::Grid(double extent, int nodes, double compact_radius, int ghost)
    : extent_(extent),
      nodes_(nodes),
      spacing_(2.0 * extent / (nodes - 1)),
      compact_radius_(compact_radius),
      ghost_(ghost) {}

Grid Grid::make(double extent, int nodes, double compact_radius, int ghost) {
  if (!(extent > 0.0) || !std::isfinite(extent)) throw Rejection("grid extent must be positive");
  if (nodes < 17) throw Rejection("grid needs at least 17 nodes per axis");
  if (!(compact_radius > 0.0) || !(compact_radius < 0.5 * extent))
    throw Rejection("compact radius must satisfy 0 < R_K < R/2");
  if (ghost < 0) throw Rejection("ghost width must be non-negative");
  return Grid(extent, nodes, compact_radius, ghost);
}

Grid Grid::with_ghost(int ghost) const {
  if (ghost < 0) throw Rejection("ghost width must be non-negative");
  Grid g = *this;
  g.ghost_ = ghost;
  return g;
}

std::string Grid::describe(int i, int j, int k) const {
  std::ostringstream os;
  os.precision(6);
  os << "node (" << i << ", " << j << ", " << k << ") at x = (" << coord(i) << ", " << coord(j)
     << ", " << coord(k) << ")";
  return os.str();
}

}  // namespace pmt
