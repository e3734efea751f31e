#include <schrodnet/inversion.hpp>

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schrodnet {

PreconditionerContext PreconditionerContext::build(const MeasurementMatrix& M0,
                                                   const MeasurementMatrix& Mavg,
                                                   double q_avg) {
  PreconditionerContext ctx;
  ctx.net = build_cmn(M0.size());
  ctx.lg = line_graph(ctx.net);
  ctx.gamma0 = recover_conductivity(ctx.net, M0);
  ctx.line_lap0 = line_laplacian(ctx.lg, line_weights(ctx.lg, ctx.gamma0));
  ctx.q_avg = q_avg;
  if (q_avg > 0.0) {
    ctx.gamma_avg = recover_conductivity(ctx.net, Mavg);
    ctx.q_tilde_avg =
        discrete_liouville_q(ctx.gamma0, ctx.gamma_avg, ctx.line_lap0);
    const double scale = ctx.q_tilde_avg.cwiseAbs().maxCoeff();
    if (scale == 0.0 || (ctx.q_tilde_avg.cwiseAbs().array() < 1e-14 * scale).any())
      throw std::runtime_error(
          "preconditioner calibration has zero entries; cannot form Q");
  } else {
    ctx.gamma_avg = ctx.gamma0;
  }
  return ctx;
}

double estimate_q_avg(const MeasurementMatrix& M_data, const DiskGrid& grid,
                      const BoundaryFunctionSet& phi,
                      const std::vector<double>& trials) {
  if (trials.empty()) throw std::invalid_argument("estimate_q_avg: no trials");
  std::vector<double> sorted = trials;
  std::sort(sorted.begin(), sorted.end());
  double best = sorted.front();
  double best_misfit = std::numeric_limits<double>::infinity();
  for (double t : sorted) {
    const DiskField q = Vector::Constant(grid.num_cells(), t);
    const double misfit = (lumped_measurements(grid, q, phi).m - M_data.m).norm();
    if (misfit < best_misfit) {
      best_misfit = misfit;
      best = t;
    }
  }
  return best;
}

Vector preconditioner_apply(const PreconditionerContext& ctx,
                            const MeasurementMatrix& M) {
  if (ctx.q_avg == 0.0) return Vector::Zero(ctx.net.num_edges());
  const Conductivity gamma = recover_conductivity(ctx.net, M);
  const Vector qt = discrete_liouville_q(ctx.gamma0, gamma, ctx.line_lap0);
  return ctx.q_avg * (qt.array() / ctx.q_tilde_avg.array()).matrix();
}

Matrix preconditioner_jacobian(const PreconditionerContext& ctx,
                               const MeasurementMatrix& M) {
  if (ctx.q_avg == 0.0)
    throw std::runtime_error("preconditioner_jacobian: q_avg is zero");
  const Conductivity gamma = recover_conductivity(ctx.net, M);
  const Matrix dq = liouville_jacobian(ctx.gamma0, gamma, ctx.line_lap0);
  const auto gj = gamma_jacobian(ctx.net, gamma);
  return (ctx.q_avg * ctx.q_tilde_avg.cwiseInverse()).asDiagonal() * dq * gj.map;
}

Vector null_vector(const PreconditionerContext& ctx,
                   const MeasurementMatrix& M) {
  const Conductivity gamma = recover_conductivity(ctx.net, M);
  return (ctx.q_tilde_avg.array() * gamma.array() / ctx.gamma0.array()).matrix();
}

namespace {

// Pairwise products of the solution fields, one row per strict
// upper-triangle measurement entry.
Matrix field_products(const Matrix& fields) {
  const int n = static_cast<int>(fields.cols());
  Matrix prod(upper_tri_count(n), fields.rows());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      prod.row(upper_tri_index(i, j, n)) =
          (fields.col(i).array() * fields.col(j).array()).matrix().transpose();
  return prod;
}

Matrix jacobian_at(const PreconditionerContext& ctx, const Conductivity& gamma) {
  const Matrix dq = liouville_jacobian(ctx.gamma0, gamma, ctx.line_lap0);
  const auto gj = gamma_jacobian(ctx.net, gamma);
  return (ctx.q_avg * ctx.q_tilde_avg.cwiseInverse()).asDiagonal() * dq * gj.map;
}

}  // namespace

Matrix sensitivity_functions(const PreconditionerContext& ctx,
                             const DiskGrid& grid,
                             const BoundaryFunctionSet& phi,
                             const DiskField& q) {
  const LumpedData data = lumped_measurements_full(grid, q, phi);
  const Conductivity gamma = recover_conductivity(ctx.net, data.M);
  return jacobian_at(ctx, gamma) * field_products(data.fields);
}

SensitivityGrid sensitivity_grid(const PreconditionerContext& ctx,
                                 const DiskGrid& grid,
                                 const BoundaryFunctionSet& phi,
                                 double q_const) {
  if (q_const < 0.0) throw std::invalid_argument("sensitivity_grid: q < 0");
  const DiskField q = Vector::Constant(grid.num_cells(), q_const);
  const Matrix rows = sensitivity_functions(ctx, grid, phi, q);

  SensitivityGrid sg;
  sg.points.resize(rows.rows(), 2);
  for (int e = 0; e < rows.rows(); ++e) {
    int best = 0;
    for (int c = 1; c < grid.num_cells(); ++c) {
      const double v = std::abs(rows(e, c)), b = std::abs(rows(e, best));
      if (v > b || (v == b && grid.cell_r(c) < grid.cell_r(best))) best = c;
    }
    sg.points(e, 0) = grid.cell_x(best);
    sg.points(e, 1) = grid.cell_y(best);
    if (grid.cell_r(best) >= 1.0)
      throw std::runtime_error("sensitivity maximum escaped the disk");
  }
  sg.tri = delaunay_triangulate(sg.points);
  return sg;
}

Matrix coarse_basis(const SensitivityGrid& sg, const DiskGrid& grid) {
  const int nn = static_cast<int>(sg.points.rows());
  Matrix B = Matrix::Zero(grid.num_cells(), nn);
  for (int c = 0; c < grid.num_cells(); ++c) {
    const double x = grid.cell_x(c), y = grid.cell_y(c);
    bool inside = false;
    for (const auto& t : sg.tri.triangles) {
      const double ax = sg.points(t[0], 0), ay = sg.points(t[0], 1);
      const double bx = sg.points(t[1], 0), by = sg.points(t[1], 1);
      const double cx = sg.points(t[2], 0), cy = sg.points(t[2], 1);
      const double area = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
      if (area == 0.0) continue;
      const double wa = ((bx - x) * (cy - y) - (by - y) * (cx - x)) / area;
      const double wb = ((x - ax) * (cy - ay) - (y - ay) * (cx - ax)) / area;
      const double wc = 1.0 - wa - wb;
      const double tol = -1e-12;
      if (wa >= tol && wb >= tol && wc >= tol) {
        B(c, t[0]) = wa;
        B(c, t[1]) = wb;
        B(c, t[2]) = wc;
        inside = true;
        break;
      }
    }
    if (!inside) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int i = 0; i < nn; ++i) {
        const double dx = sg.points(i, 0) - x, dy = sg.points(i, 1) - y;
        if (dx * dx + dy * dy < best_d) {
          best_d = dx * dx + dy * dy;
          best = i;
        }
      }
      B(c, best) = 1.0;
    }
  }
  return B;
}

DiskField initial_guess(const SensitivityGrid& sg, const Vector& q_data,
                        const DiskGrid& grid) {
  const Matrix B = coarse_basis(sg, grid);
  return (B * q_data).cwiseMax(0.0);
}

Vector pinv_solve(const Matrix& A, const Vector& b, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_tol * sv(0);
  Vector coeff = svd.matrixU().transpose() * b;
  for (int i = 0; i < sv.size(); ++i)
    coeff(i) = sv(i) > cutoff ? coeff(i) / sv(i) : 0.0;
  return svd.matrixV() * coeff;
}

namespace {

struct IterationData {
  LumpedData data;
  Conductivity gamma;
  Vector Q;
  Vector z;
};

IterationData evaluate(const PreconditionerContext& ctx, const DiskGrid& grid,
                       const BoundaryFunctionSet& phi, const DiskField& q) {
  IterationData out{lumped_measurements_full(grid, q, phi), {}, {}, {}};
  out.gamma = recover_conductivity(ctx.net, out.data.M);
  const Vector qt = discrete_liouville_q(ctx.gamma0, out.gamma, ctx.line_lap0);
  out.Q = ctx.q_avg * (qt.array() / ctx.q_tilde_avg.array()).matrix();
  out.z = (ctx.q_tilde_avg.array() * out.gamma.array() / ctx.gamma0.array())
              .matrix();
  return out;
}

Vector gn_step(const PreconditionerContext& ctx, const DiskGrid& grid,
               const IterationData& it, const Vector& r, double svd_tol) {
  const Matrix dq_map = jacobian_at(ctx, it.gamma);
  const Vector delta = pinv_solve(dq_map, r, svd_tol);
  // d M / d q scaled by sqrt(volume) on each side, so the truncated SVD
  // below returns the minimum-L2-norm update on the grid.
  const Vector sqv = grid.volumes().array().sqrt().matrix();
  const Matrix dmw = field_products(it.data.fields) * sqv.asDiagonal();
  const Vector sw = pinv_solve(dmw, delta, svd_tol);
  return (sw.array() / sqv.array()).matrix();
}

}  // namespace

std::vector<InversionState> gauss_newton(const PreconditionerContext& ctx,
                                         const DiskGrid& grid,
                                         const BoundaryFunctionSet& phi,
                                         const MeasurementMatrix& M_data,
                                         const DiskField& q0,
                                         const GaussNewtonOptions& opts) {
  const Vector Q_data = preconditioner_apply(ctx, M_data);

  std::vector<InversionState> history;
  DiskField q = q0;
  for (int k = 0; k <= opts.max_iter; ++k) {
    const IterationData it = evaluate(ctx, grid, phi, q);
    const Vector r = it.Q - Q_data;

    InversionState st;
    st.k = k;
    st.q = q;
    st.res_pre = r.norm();
    const Vector proj = r - it.z * (it.z.dot(r) / it.z.squaredNorm());
    st.res_proj = proj.norm();
    st.res_unpre = (it.data.M.m - M_data.m).norm();
    history.push_back(std::move(st));

    if (k == opts.max_iter) break;
    const Vector step = gn_step(ctx, grid, it, r, opts.svd_tol);
    q -= step;
  }
  return history;
}

bool update_invariance_check(const PreconditionerContext& ctx,
                             const DiskGrid& grid,
                             const BoundaryFunctionSet& phi,
                             const MeasurementMatrix& M_data,
                             const DiskField& q_in, double alpha,
                             const GaussNewtonOptions& opts) {
  const Vector Q_data = preconditioner_apply(ctx, M_data);
  const IterationData it = evaluate(ctx, grid, phi, q_in);
  const Vector r = it.Q - Q_data;
  const Vector s0 = gn_step(ctx, grid, it, r, opts.svd_tol);
  const Vector s1 = gn_step(ctx, grid, it, r + alpha * it.z, opts.svd_tol);
  const double scale = std::max(s0.norm(), std::abs(alpha) * it.z.norm());
  if (scale == 0.0) return true;
  return (s1 - s0).norm() <= 1e-10 * scale;
}

}  // namespace schrodnet
