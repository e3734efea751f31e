#pragma once

#include <schrodnet/types.hpp>

namespace schrodnet {

/// Lumping profiles on the boundary circle: smooth nonnegative bumps
/// with disjoint supports, ordered counter-clockwise, each integrating
/// to one. A profile may be a convex combination of base bumps (the
/// noise-adaptive lumped profiles).
class BoundaryFunctionSet {
 public:
  /// n raised-cosine bumps centered at 2*pi*i/n, supported on arcs of
  /// width width_fraction * (2*pi/n).
  static BoundaryFunctionSet raised_cosine(int n, double width_fraction = 0.8);

  /// Combined profiles psi_i = sum_{j in sets[i]} weights[i][j] phi_j.
  BoundaryFunctionSet combine(const std::vector<std::vector<int>>& sets,
                              const std::vector<std::vector<double>>& weights) const;

  int size() const { return static_cast<int>(functions_.size()); }

  double evaluate(int i, double theta) const;

  /// Profile values at the ntheta boundary face midpoints, one row per
  /// function. Each base bump is normalized so its discrete integral
  /// (row sum times dtheta) is exactly one.
  Matrix sample(int ntheta) const;

 private:
  struct Bump {
    double center, width, coeff;
  };
  std::vector<std::vector<Bump>> functions_;
};

}  // namespace schrodnet
