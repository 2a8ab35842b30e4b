#pragma once

#include "l1disc/pointset.hpp"

#include <cstdint>
#include <vector>

namespace l1disc {

/// Grid of all point coordinates (plus 0 and 1) on each axis.
///
/// corner(a, b) is the closed-box count #{p : p_x <= x_cuts[a], p_y <= y_cuts[b]}.
/// On the open cell (x_cuts[a], x_cuts[a+1]) x (y_cuts[b], y_cuts[b+1]) the
/// counting part of D_P is constant and equal to corner(a, b).
struct CellDecomposition {
  std::vector<Rational> x_cuts;
  std::vector<Rational> y_cuts;
  std::vector<std::uint32_t> corner_counts;  // row-major, x_cuts.size() rows

  std::size_t x_cells() const { return x_cuts.size() - 1; }
  std::size_t y_cells() const { return y_cuts.size() - 1; }
  std::uint32_t corner(std::size_t a, std::size_t b) const { return corner_counts[a * y_cuts.size() + b]; }
  std::uint32_t cell_count(std::size_t a, std::size_t b) const { return corner(a, b); }
};

CellDecomposition decompose(const PointSet& points);

}  // namespace l1disc
