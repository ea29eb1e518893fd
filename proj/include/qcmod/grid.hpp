#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qcmod/curves.hpp"
#include "qcmod/geometry.hpp"

namespace qcmod {

/// Axis-aligned rectangular grid over a box; at least 8 cells per axis.
struct Grid {
  Vec lo, hi;
  std::vector<int> res;

  Grid(Vec lo_, Vec hi_, std::vector<int> res_);
  Grid(Vec lo_, Vec hi_, int res_per_axis);

  int dim() const { return static_cast<int>(lo.size()); }
  std::size_t cell_count() const;
  double cell_volume() const;
  double edge(int axis) const {
    return (hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)]) /
           res[static_cast<std::size_t>(axis)];
  }
  bool contains(const Vec& p) const;
  std::size_t cell_of(const Vec& p) const;  // flat index, boundary clamped
  Vec cell_center(std::size_t flat) const;

  bool operator==(const Grid&) const = default;
};

/// Nonnegative density, one value per cell.
struct GridDensity {
  Grid grid;
  std::vector<double> values;

  GridDensity(Grid grid_, std::vector<double> values_);
  static GridDensity zeros(const Grid& g);
  static GridDensity constant(const Grid& g, double v);
};

/// Smallest grid box covering every curve of the family, padded per axis by
/// `padding` times the axis extent.
Grid fit_grid(const CurveFamily& fam, int res_per_axis, double padding = 0.05);
Grid fit_grid(const std::vector<const CurveFamily*>& fams, int res_per_axis,
              double padding = 0.05);

/// Exact per-cell lengths of the polyline, by parametric clipping of each
/// segment against the cell boundaries. Throws if the curve leaves the box.
std::vector<std::pair<std::size_t, double>> curve_cell_lengths(const Grid& g,
                                                               const Polyline& c);

}  // namespace qcmod
