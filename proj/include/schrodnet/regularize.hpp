#pragma once

#include <schrodnet/boundary.hpp>
#include <schrodnet/measurement.hpp>
#include <schrodnet/netops.hpp>

#include <string>
#include <vector>

namespace schrodnet {

/// Grouping of N boundary profiles into n lumped profiles
/// psi_i = sum_{j in sets[i]} weights[i][j] phi_j; the sets are disjoint
/// runs of consecutive indices and each weight row sums to one.
struct LumpingPlan {
  int original_n = 0;
  int target_n = 0;
  std::vector<std::vector<int>> sets;
  std::vector<std::vector<double>> weights;

  void validate() const;

  /// Equal consecutive blocks of size floor(N/n), uniform weights,
  /// leftover profiles discarded symmetrically from both ends.
  static LumpingPlan uniform(int original_n, int target_n);

  std::string to_json() const;
  static LumpingPlan from_json(const std::string& text);

  BoundaryFunctionSet apply(const BoundaryFunctionSet& phi) const;
};

/// M'(i,j) = sum_{p in S_i} sum_{r in S_j} w_ip w_jr M(p,r) for i != j,
/// diagonal rebuilt from negative row sums.
MeasurementMatrix lump_measurements(const MeasurementMatrix& M,
                                    const LumpingPlan& plan);

/// Additive Gaussian noise on the off-diagonal entries, scaled by the
/// largest off-diagonal magnitude, symmetrized, diagonal rebuilt.
MeasurementMatrix add_noise(const MeasurementMatrix& M, double rel_level,
                            unsigned seed);

struct SizeSelection {
  int n = 0;
  MeasurementMatrix lumped;
  Conductivity gamma;
  LumpingPlan plan;
  std::vector<std::string> log;  // one line per candidate tried
};

/// Walk the candidates in the given (descending) order and return the
/// first for which conductivity recovery from the lumped noisy data
/// succeeds with positive conductances. Throws std::runtime_error with
/// the decision log when every candidate fails.
SizeSelection select_network_size(const MeasurementMatrix& M_noisy,
                                  const std::vector<int>& candidates);

}  // namespace schrodnet
