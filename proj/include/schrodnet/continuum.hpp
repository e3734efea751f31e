#pragma once

#include <schrodnet/boundary.hpp>
#include <schrodnet/disk_grid.hpp>
#include <schrodnet/measurement.hpp>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <memory>

namespace schrodnet {

/// Finite-volume solver for  -div(sigma grad v) + q v = 0  on the unit
/// disk with Dirichlet data on the boundary circle. sigma defaults to 1;
/// when given, face values are distance-weighted harmonic means of the
/// cell values. Factorized once, reusable for many boundary data.
class DiskSolver {
 public:
  DiskSolver(const DiskGrid& grid, const DiskField& q,
             const DiskField* sigma = nullptr);

  const DiskGrid& grid() const { return *grid_; }

  /// Cell potentials for boundary values f (one per boundary face).
  Vector solve(const Vector& f) const;

  /// Current through each boundary face, positive into the domain.
  Vector boundary_currents(const Vector& f, const Vector& cells) const;

 private:
  const DiskGrid* grid_;
  Vector boundary_trans_;  // transmissibility of each boundary face
  Eigen::SparseMatrix<double> A_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor_;
};

Vector solve_dirichlet(const DiskGrid& grid, const DiskField& q,
                       const Vector& f);

/// sigma = s^2 where s solves the q-absorption problem with s = 1 on the
/// boundary; 0 < sigma <= 1 for q >= 0.
DiskField potential_to_conductivity(const DiskGrid& grid, const DiskField& q);

/// Lumped measurements plus the Dirichlet solution fields they came
/// from (cells x n), for reuse in Jacobian and sensitivity assembly.
struct LumpedData {
  MeasurementMatrix M;
  Matrix fields;   // cells x n
  Matrix profiles; // n x ntheta boundary samples
};

LumpedData lumped_measurements_full(const DiskGrid& grid, const DiskField& q,
                                    const BoundaryFunctionSet& phi,
                                    const DiskField* sigma = nullptr);

MeasurementMatrix lumped_measurements(const DiskGrid& grid, const DiskField& q,
                                      const BoundaryFunctionSet& phi);

/// Max relative off-diagonal mismatch between lumped Schroedinger
/// measurements for q and lumped conductivity measurements for the
/// matched sigma. Expected O(grid error).
double check_liouville_dtn(const DiskGrid& grid, const DiskField& q,
                           const BoundaryFunctionSet& phi);

/// Derivative of the strict-upper-triangle measurement entries with
/// respect to coefficients of the given interior basis fields:
///   d M(i,j) / d c_b = sum_cells basis_b * vol * u_i * u_j.
Matrix measurement_jacobian(const DiskGrid& grid, const DiskField& q,
                            const BoundaryFunctionSet& phi,
                            const std::vector<DiskField>& basis);

/// Same derivative from precomputed solution fields.
Matrix measurement_jacobian_from_fields(const DiskGrid& grid,
                                        const Matrix& fields,
                                        const std::vector<DiskField>& basis);

}  // namespace schrodnet
