#pragma once

#include <schrodnet/continuum.hpp>
#include <schrodnet/delaunay.hpp>
#include <schrodnet/liouville.hpp>
#include <schrodnet/recovery.hpp>

namespace schrodnet {

/// Everything the nonlinear preconditioner needs, built once per
/// experiment: the critical network, the reference conductivity
/// gamma(M(0)), the average-potential calibration gamma(M(q_avg)), and
/// the line-graph Laplacian of the reference.
struct PreconditionerContext {
  CircularNetwork net;
  LineGraphModel lg;
  Conductivity gamma0;
  Conductivity gamma_avg;
  double q_avg = 0.0;
  Vector q_tilde_avg;  // empty when q_avg == 0
  Matrix line_lap0;

  static PreconditionerContext build(const MeasurementMatrix& M0,
                                     const MeasurementMatrix& Mavg,
                                     double q_avg);
};

/// Direct search for the data's average potential: the trial value whose
/// forward measurements are closest to the data in Frobenius norm, ties
/// broken toward the smaller trial.
double estimate_q_avg(const MeasurementMatrix& M_data, const DiskGrid& grid,
                      const BoundaryFunctionSet& phi,
                      const std::vector<double>& trials);

/// Q(M) = q_avg * qtilde(gamma(M)) / qtilde_avg componentwise; zero at
/// M(0) and q_avg * ones at M(q_avg) by calibration. Throws
/// std::runtime_error if the calibration potential has a zero entry.
Vector preconditioner_apply(const PreconditionerContext& ctx,
                            const MeasurementMatrix& M);

/// Jacobian of Q with respect to the strict-upper-triangle entries of M;
/// rank n(n-1)/2 - 1 with right null vector M and left null vector
/// qtilde_avg * gamma(M) / gamma0.
Matrix preconditioner_jacobian(const PreconditionerContext& ctx,
                               const MeasurementMatrix& M);

/// Left null vector of preconditioner_jacobian at M.
Vector null_vector(const PreconditionerContext& ctx,
                   const MeasurementMatrix& M);

/// Rows of D Q[M(q)] D M[q] as disk fields (one per base edge): the
/// pointwise sensitivity of each entry of Q to changes in q.
Matrix sensitivity_functions(const PreconditionerContext& ctx,
                             const DiskGrid& grid,
                             const BoundaryFunctionSet& phi,
                             const DiskField& q);

/// Locations of the sensitivity maxima and their Delaunay triangulation.
struct SensitivityGrid {
  Points2 points;  // one per base edge, inside the unit disk
  Triangulation tri;
};

SensitivityGrid sensitivity_grid(const PreconditionerContext& ctx,
                                 const DiskGrid& grid,
                                 const BoundaryFunctionSet& phi,
                                 double q_const);

/// Hat-function values of every grid node at the cells of a DiskGrid:
/// cells x nodes, each column one coarse basis function.
Matrix coarse_basis(const SensitivityGrid& sg, const DiskGrid& grid);

/// Piecewise-linear initial guess from the preconditioned data, clamped
/// at zero from below.
DiskField initial_guess(const SensitivityGrid& sg, const Vector& q_data,
                        const DiskGrid& grid);

struct InversionState {
  int k = 0;
  DiskField q;            // iterate on the inversion grid
  double res_pre = 0.0;   // || Q(M(q_k)) - Q(M_data) ||
  double res_proj = 0.0;  // || P_k (...) ||, P_k orthogonal to z_k
  double res_unpre = 0.0; // || M(q_k) - M_data ||_F
};

struct GaussNewtonOptions {
  int max_iter = 3;
  double svd_tol = 1e-10;  // relative singular value cutoff
};

/// Preconditioned Gauss-Newton iteration on the inversion grid. The
/// measurement Jacobian acts on volume-weighted cell values, so its
/// pseudoinverse gives the minimum-norm update in the grid L2 inner
/// product. Iterates are unconstrained; clamp reported reconstructions
/// at zero if a nonnegative potential is required.
std::vector<InversionState> gauss_newton(const PreconditionerContext& ctx,
                                         const DiskGrid& grid,
                                         const BoundaryFunctionSet& phi,
                                         const MeasurementMatrix& M_data,
                                         const DiskField& q0,
                                         const GaussNewtonOptions& opts = {});

/// True iff the Gauss-Newton update is unchanged when alpha * z_k is
/// added to the preconditioned residual.
bool update_invariance_check(const PreconditionerContext& ctx,
                             const DiskGrid& grid,
                             const BoundaryFunctionSet& phi,
                             const MeasurementMatrix& M_data,
                             const DiskField& q, double alpha,
                             const GaussNewtonOptions& opts = {});

/// Truncated-SVD Moore-Penrose pseudoinverse solve.
Vector pinv_solve(const Matrix& A, const Vector& b, double rel_tol);

}  // namespace schrodnet
