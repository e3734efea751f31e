#pragma once

#include <schrodnet/types.hpp>

#include <string>

namespace schrodnet {

/// Lumped DtN data: n x n, symmetric, rows summing to zero, off-diagonal
/// entries negative for clean absorptive data.
struct MeasurementMatrix {
  Matrix m;

  int size() const { return static_cast<int>(m.rows()); }

  /// Rebuild the diagonal as negative row sums of the off-diagonal part.
  void enforce_conservation();

  /// Largest symmetry violation and row-sum magnitude, relative to the
  /// largest off-diagonal entry.
  double symmetry_defect() const;
  double row_sum_defect() const;

  /// True if every off-diagonal entry is strictly negative.
  bool offdiag_negative() const;

  static MeasurementMatrix from_offdiag(const Matrix& offdiag);
};

/// JSON schema: {"n": n, "entries": [row-major doubles]}
void save_measurements(const MeasurementMatrix& M, const std::string& path);
MeasurementMatrix load_measurements(const std::string& path);

std::string measurements_to_json(const MeasurementMatrix& M);
MeasurementMatrix measurements_from_json(const std::string& text);

}  // namespace schrodnet
