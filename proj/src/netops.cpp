#include <schrodnet/netops.hpp>

#include <Eigen/Cholesky>
#include <stdexcept>

namespace schrodnet {

Matrix assemble_operator(const Network& g, const Conductivity& gamma,
                         const Vector& q) {
  if ((gamma.array() <= 0.0).any())
    throw std::invalid_argument("assemble_operator: nonpositive conductance");
  Matrix L = Matrix::Zero(g.num_nodes, g.num_nodes);
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.edges[e];
    L(a, b) -= gamma(e);
    L(b, a) -= gamma(e);
    L(a, a) += gamma(e);
    L(b, b) += gamma(e);
  }
  L.diagonal() += q;
  return L;
}

namespace {

// Interior Cholesky factor of the assembled operator; throws if the
// interior block is not positive definite (violated preconditions).
Eigen::LLT<Matrix> interior_factor(const Matrix& L, int nb) {
  const int ni = static_cast<int>(L.rows()) - nb;
  Eigen::LLT<Matrix> llt(L.bottomRightCorner(ni, ni));
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("interior operator block is not positive definite");
  return llt;
}

}  // namespace

Vector dirichlet_solve(const Network& g, const Conductivity& gamma,
                       const Vector& q, const Vector& f) {
  const Matrix L = assemble_operator(g, gamma, q);
  const int nb = g.n_boundary, ni = g.num_interior();
  Vector u(g.num_nodes);
  u.head(nb) = f;
  if (ni > 0) {
    auto llt = interior_factor(L, nb);
    u.tail(ni) = llt.solve(-L.bottomLeftCorner(ni, nb) * f);
  }
  return u;
}

Matrix dtn_map(const Network& g, const Conductivity& gamma, const Vector& q) {
  const Matrix L = assemble_operator(g, gamma, q);
  const int nb = g.n_boundary, ni = g.num_interior();
  if (ni == 0) return L;
  auto llt = interior_factor(L, nb);
  const Matrix X = llt.solve(L.bottomLeftCorner(ni, nb));
  return L.topLeftCorner(nb, nb) - L.topRightCorner(nb, ni) * X;
}

Matrix network_dtn_jacobian(const Network& g, const Conductivity& gamma) {
  const int nb = g.n_boundary;
  const Vector q = Vector::Zero(g.num_nodes);
  // Du for all coordinate boundary data, edges x boundary nodes
  Matrix Du(g.num_edges(), nb);
  for (int k = 0; k < nb; ++k) {
    const Vector u = dirichlet_solve(g, gamma, q, Vector::Unit(nb, k));
    for (int e = 0; e < g.num_edges(); ++e)
      Du(e, k) = u(g.edges[e][0]) - u(g.edges[e][1]);
  }
  Matrix jac(upper_tri_count(nb), g.num_edges());
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j)
      jac.row(upper_tri_index(i, j, nb)) =
          (Du.col(i).array() * Du.col(j).array()).matrix().transpose();
  return jac;
}

}  // namespace schrodnet
