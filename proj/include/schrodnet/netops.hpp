#pragma once

#include <schrodnet/netgraph.hpp>

namespace schrodnet {

/// Edge conductances, strictly positive.
using Conductivity = Vector;

/// Weighted graph Schroedinger operator: off-diagonal (i,j) = -gamma({i,j})
/// for each edge, diagonal (i,i) = sum of incident conductances + q(i).
/// Throws std::invalid_argument if any conductance is nonpositive.
Matrix assemble_operator(const Network& g, const Conductivity& gamma,
                         const Vector& q);

/// Solve the Dirichlet problem: interior Kirchhoff balance with boundary
/// potentials fixed to f. Requires q >= 0 and a connected interior
/// subgraph so that the interior block is positive definite; a failed
/// factorization is reported as std::runtime_error.
/// Returns potentials at all nodes (boundary entries equal to f).
Vector dirichlet_solve(const Network& g, const Conductivity& gamma,
                       const Vector& q, const Vector& f);

/// DtN map of the network: Schur complement of the operator onto the
/// boundary nodes. Symmetric; for q = 0 its rows sum to zero.
Matrix dtn_map(const Network& g, const Conductivity& gamma, const Vector& q);

/// Jacobian of the q = 0 DtN map with respect to the conductances,
/// restricted to the strict upper triangle of the DtN matrix.
/// Row (i,j), column e:  d Lambda(i,j) / d gamma(e) = (Du_i)(e) (Du_j)(e),
/// with u_k the Dirichlet solution for the k-th coordinate boundary datum.
Matrix network_dtn_jacobian(const Network& g, const Conductivity& gamma);

}  // namespace schrodnet
