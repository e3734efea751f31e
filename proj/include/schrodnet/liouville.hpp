#pragma once

#include <schrodnet/netops.hpp>

namespace schrodnet {

/// Weights on the line graph: geometric mean of the two base-edge
/// conductances, one value per line-graph edge.
Vector line_weights(const LineGraphModel& lg, const Conductivity& gamma);

/// Weighted graph Laplacian on the line graph for the given edge weights.
Matrix line_laplacian(const LineGraphModel& lg, const Vector& weights);

/// Discrete potential on the line-graph nodes that makes the two
/// weighted line Laplacians congruent via diag(gamma1/gamma0)^{1/2}:
///   q = -(L0 w) / w componentwise, with w = (gamma1/gamma0)^{1/2}
/// and L0 the line Laplacian with weights from gamma0.
Vector discrete_liouville_q(const Conductivity& gamma0,
                            const Conductivity& gamma1,
                            const LineGraphModel& lg);

/// Same, reusing a precomputed L0 = line_laplacian(lg, line_weights(lg, gamma0)).
Vector discrete_liouville_q(const Conductivity& gamma0,
                            const Conductivity& gamma1, const Matrix& lap0);

/// Frobenius norm of the congruence mismatch
///   L1 - diag(w) (L0 + diag(q)) diag(w),   w = (gamma1/gamma0)^{1/2}.
/// Zero in exact arithmetic for q from discrete_liouville_q.
double verify_congruence(const Conductivity& gamma0,
                         const Conductivity& gamma1, const LineGraphModel& lg);

/// Jacobian of gamma -> discrete_liouville_q(gamma0, gamma, lg):
///   dq[dgamma] = -(gamma0/gamma)^{1/2} * [L0 (dgamma/(gamma*gamma0)^{1/2})]
///                - (dgamma/gamma) * q(gamma),
/// componentwise. Rank |E|-1: gamma is a right null vector and
/// gamma/gamma0 a left null vector.
Matrix liouville_jacobian(const Conductivity& gamma0, const Conductivity& gamma,
                          const LineGraphModel& lg);

Matrix liouville_jacobian(const Conductivity& gamma0, const Conductivity& gamma,
                          const Matrix& lap0);

}  // namespace schrodnet
