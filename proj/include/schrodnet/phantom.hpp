#pragma once

#include <schrodnet/disk_grid.hpp>

#include <string>

namespace schrodnet {

/// Synthetic potential built from primitives; q(x) = max(0, sum).
struct Phantom {
  struct Gaussian {
    double cx, cy, width, amplitude;
  };
  struct Disk {
    double cx, cy, radius, value;
  };
  std::vector<Gaussian> gaussians;
  std::vector<Disk> disks;

  double operator()(double x, double y) const;
  DiskField sample(const DiskGrid& grid) const;

  /// JSON: {"primitives":[{"gaussian":{"center":[x,y],"width":w,"amplitude":a}},
  ///                      {"disk":{"center":[x,y],"radius":r,"value":v}}]}
  static Phantom from_json(const std::string& text);
  static Phantom load(const std::string& path);
  std::string to_json() const;

  /// Stand-in benchmark phantoms.
  static Phantom smooth_benchmark();
  static Phantom piecewise_benchmark();
};

}  // namespace schrodnet
