#include <schrodnet/disk_grid.hpp>

#include <numbers>
#include <stdexcept>

namespace schrodnet {

DiskGrid::DiskGrid(int nr, int ntheta) : nr_(nr), nt_(ntheta) {
  if (nr < 3 || ntheta < 4)
    throw std::invalid_argument("DiskGrid: resolution too small");
  dr_ = 1.0 / nr;
  dt_ = 2.0 * std::numbers::pi / ntheta;

  cell_r_.resize(num_cells());
  cell_theta_.resize(num_cells());
  volumes_.resize(num_cells());

  cell_r_[0] = 0.0;
  cell_theta_[0] = 0.0;
  volumes_[0] = std::numbers::pi * dr_ * dr_;
  for (int i = 1; i < nr_; ++i) {
    for (int j = 0; j < nt_; ++j) {
      const int c = cell(i, j);
      cell_r_[c] = (i + 0.5) * dr_;
      cell_theta_[c] = (j + 0.5) * dt_;
      volumes_[c] = (i + 0.5) * dr_ * dr_ * dt_;
    }
  }
}

}  // namespace schrodnet
