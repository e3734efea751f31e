#pragma once

#include <schrodnet/types.hpp>

#include <cmath>

namespace schrodnet {

/// Finite-volume grid on the unit disk: a tensor-product polar layout
/// with the innermost ring merged into a single center cell so the
/// r -> 0 axis needs no special-casing. Cells are indexed center first,
/// then ring by ring outward, counter-clockwise within a ring.
class DiskGrid {
 public:
  DiskGrid(int nr, int ntheta);

  int nr() const { return nr_; }
  int ntheta() const { return nt_; }
  int num_cells() const { return 1 + (nr_ - 1) * nt_; }
  double dr() const { return dr_; }
  double dtheta() const { return dt_; }

  int center_cell() const { return 0; }
  /// ring index i in [1, nr-1], angular index j in [0, ntheta)
  int cell(int i, int j) const { return 1 + (i - 1) * nt_ + ((j % nt_) + nt_) % nt_; }

  double cell_r(int c) const { return cell_r_[c]; }
  double cell_theta(int c) const { return cell_theta_[c]; }
  double cell_x(int c) const { return cell_r_[c] * std::cos(cell_theta_[c]); }
  double cell_y(int c) const { return cell_r_[c] * std::sin(cell_theta_[c]); }
  const Vector& volumes() const { return volumes_; }

  /// Angular midpoint of boundary face j (the outer arc of cell (nr-1, j)).
  double boundary_theta(int j) const { return (j + 0.5) * dt_; }

  /// Sample a function of (x, y) at the cell centers.
  template <typename F>
  Vector sample(F&& f) const {
    Vector v(num_cells());
    for (int c = 0; c < num_cells(); ++c) v(c) = f(cell_x(c), cell_y(c));
    return v;
  }

 private:
  int nr_, nt_;
  double dr_, dt_;
  std::vector<double> cell_r_, cell_theta_;
  Vector volumes_;
};

/// Scalar field sampled at the cells of a DiskGrid.
using DiskField = Vector;

}  // namespace schrodnet
