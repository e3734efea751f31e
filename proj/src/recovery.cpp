#include <schrodnet/recovery.hpp>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

namespace schrodnet {

namespace {

Vector dtn_upper(const Network& g, const Conductivity& gamma) {
  return upper_tri_vec(dtn_map(g, gamma, Vector::Zero(g.num_nodes)));
}

}  // namespace

Conductivity recover_conductivity(const Network& g, const MeasurementMatrix& M,
                                  const RecoveryOptions& opts) {
  const int ne = g.num_edges();
  if (ne != upper_tri_count(g.n_boundary))
    throw std::invalid_argument("recover_conductivity: graph is not of critical size");
  const Vector target = upper_tri_vec(M.m);
  const double scale = target.norm();
  if (scale == 0.0) throw RecoveryError("zero measurement matrix");
  if ((target.array() >= 0.0).any())
    throw RecoveryError(
        "nonnegative off-diagonal measurement: no positive network fits");

  // Scale calibration: dtn is homogeneous of degree 1 in gamma, so a
  // constant initial guess can be matched to the data magnitude exactly.
  const Vector ref = dtn_upper(g, Vector::Ones(ne));
  Vector xi = Vector::Constant(ne, std::log(scale / ref.norm()));

  // Levenberg-Marquardt on log-conductances with uniform damping: the
  // trace scaling keeps insensitive deep edges from taking wild steps.
  Vector gamma = xi.array().exp().matrix();
  Vector r = dtn_upper(g, gamma) - target;
  double lambda = 1e-3;
  for (int it = 0; it < opts.max_iter; ++it) {
    if (r.norm() <= opts.tol * scale) return gamma;
    const Matrix jac =
        network_dtn_jacobian(g, gamma) * gamma.asDiagonal();  // d/d xi
    const Matrix jtj = jac.transpose() * jac;
    const Vector grad = jac.transpose() * r;
    bool accepted = false;
    for (int inner = 0; inner < 60; ++inner) {
      Matrix lhs = jtj;
      lhs.diagonal().array() += lambda * jtj.trace() / jtj.rows();
      const Vector step = lhs.llt().solve(-grad);
      if (!step.allFinite()) break;
      const Vector xi_try = (xi.array() + step.array()).matrix();
      if (xi_try.cwiseAbs().maxCoeff() > opts.log_bound) {
        lambda *= 10.0;
        continue;
      }
      const Vector gamma_try = xi_try.array().exp().matrix();
      Vector r_try;
      try {
        r_try = dtn_upper(g, gamma_try) - target;
      } catch (const std::runtime_error&) {
        lambda *= 10.0;
        continue;
      }
      if (r_try.norm() < r.norm()) {
        xi = xi_try;
        gamma = gamma_try;
        r = r_try;
        lambda = std::max(lambda / 3.0, 1e-14);
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) break;
  }
  if (r.norm() <= opts.tol * scale) return gamma;
  throw RecoveryError("no positive conductivity matches the measurements");
}

GammaJacobian gamma_jacobian(const Network& g, const Conductivity& gamma) {
  const Matrix fwd = network_dtn_jacobian(g, gamma);
  Eigen::JacobiSVD<Matrix> svd(fwd, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  GammaJacobian out;
  out.condition = sv(0) / sv(sv.size() - 1);
  out.map = svd.solve(Matrix::Identity(fwd.rows(), fwd.rows()));
  return out;
}

}  // namespace schrodnet
