#include <schrodnet/liouville.hpp>

#include <stdexcept>

namespace schrodnet {

namespace {

void require_positive(const Vector& v, const char* what) {
  if ((v.array() <= 0.0).any())
    throw std::invalid_argument(std::string(what) + ": entries must be positive");
}

}  // namespace

Vector line_weights(const LineGraphModel& lg, const Conductivity& gamma) {
  require_positive(gamma, "line_weights");
  Vector w(lg.edges.size());
  for (size_t k = 0; k < lg.edges.size(); ++k)
    w(k) = std::sqrt(gamma(lg.edges[k][0]) * gamma(lg.edges[k][1]));
  return w;
}

Matrix line_laplacian(const LineGraphModel& lg, const Vector& weights) {
  Matrix L = Matrix::Zero(lg.num_base_edges, lg.num_base_edges);
  for (size_t k = 0; k < lg.edges.size(); ++k) {
    const auto [a, b] = lg.edges[k];
    L(a, b) -= weights(k);
    L(b, a) -= weights(k);
    L(a, a) += weights(k);
    L(b, b) += weights(k);
  }
  return L;
}

Vector discrete_liouville_q(const Conductivity& gamma0,
                            const Conductivity& gamma1, const Matrix& lap0) {
  require_positive(gamma0, "discrete_liouville_q");
  require_positive(gamma1, "discrete_liouville_q");
  const Vector w = (gamma1.array() / gamma0.array()).sqrt().matrix();
  return -(lap0 * w).array() / w.array();
}

Vector discrete_liouville_q(const Conductivity& gamma0,
                            const Conductivity& gamma1,
                            const LineGraphModel& lg) {
  return discrete_liouville_q(gamma0, gamma1,
                              line_laplacian(lg, line_weights(lg, gamma0)));
}

double verify_congruence(const Conductivity& gamma0,
                         const Conductivity& gamma1, const LineGraphModel& lg) {
  const Matrix L0 = line_laplacian(lg, line_weights(lg, gamma0));
  const Matrix L1 = line_laplacian(lg, line_weights(lg, gamma1));
  const Vector q = discrete_liouville_q(gamma0, gamma1, L0);
  const Vector w = (gamma1.array() / gamma0.array()).sqrt().matrix();
  Matrix rhs = L0;
  rhs.diagonal() += q;
  rhs = w.asDiagonal() * rhs * w.asDiagonal();
  return (L1 - rhs).norm();
}

Matrix liouville_jacobian(const Conductivity& gamma0, const Conductivity& gamma,
                          const Matrix& lap0) {
  require_positive(gamma0, "liouville_jacobian");
  require_positive(gamma, "liouville_jacobian");
  const Vector q = discrete_liouville_q(gamma0, gamma, lap0);
  const Vector a = (gamma0.array() / gamma.array()).sqrt().matrix();
  const Vector b = (gamma.array() * gamma0.array()).rsqrt().matrix();
  // dw = dgamma / (2 sqrt(gamma gamma0)), dq = -(L0 dw)/w - q dw/w
  Matrix jac = -0.5 * (a.asDiagonal() * lap0 * b.asDiagonal());
  jac.diagonal() -= 0.5 * (q.array() / gamma.array()).matrix();
  return jac;
}

Matrix liouville_jacobian(const Conductivity& gamma0, const Conductivity& gamma,
                          const LineGraphModel& lg) {
  return liouville_jacobian(gamma0, gamma,
                            line_laplacian(lg, line_weights(lg, gamma0)));
}

}  // namespace schrodnet
