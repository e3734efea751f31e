#include <doctest.h>

#include <schrodnet/liouville.hpp>

#include <random>

using namespace schrodnet;

namespace {

Vector random_positive(int n, unsigned seed, double lo = 0.3, double hi = 3.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("line_weights geometric means") {
  Network path{3, 2, {{0, 2}, {1, 2}}};
  const auto lg = line_graph(path);
  Vector gamma(2);
  gamma << 1.0, 4.0;
  const Vector w = line_weights(lg, gamma);
  REQUIRE(w.size() == 1);
  CHECK(w(0) == doctest::Approx(2.0));

  const auto g = build_cmn(5);
  const auto lgc = line_graph(g);
  CHECK((line_weights(lgc, Vector::Constant(g.num_edges(), 3.0)).array() - 3.0)
            .abs()
            .maxCoeff() < 1e-15);
  // symmetric in the pair
  const Vector gr = random_positive(g.num_edges(), 1);
  const Vector wr = line_weights(lgc, gr);
  for (size_t k = 0; k < lgc.edges.size(); ++k)
    CHECK(wr(k) ==
          doctest::Approx(std::sqrt(gr(lgc.edges[k][0]) * gr(lgc.edges[k][1]))));
}

TEST_CASE("discrete_liouville_q vanishes for proportional conductivities") {
  const auto g = build_cmn(5);
  const auto lg = line_graph(g);
  const Vector gamma0 = random_positive(g.num_edges(), 2);
  CHECK(discrete_liouville_q(gamma0, gamma0, lg).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(discrete_liouville_q(gamma0, 7.5 * gamma0, lg).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("discrete_liouville_q scale invariance in gamma1") {
  const auto g = build_cmn(5);
  const auto lg = line_graph(g);
  const Vector gamma0 = random_positive(g.num_edges(), 3);
  const Vector gamma1 = random_positive(g.num_edges(), 4);
  const Vector q1 = discrete_liouville_q(gamma0, gamma1, lg);
  const Vector q2 = discrete_liouville_q(gamma0, 0.37 * gamma1, lg);
  CHECK((q1 - q2).cwiseAbs().maxCoeff() < 1e-12 * q1.cwiseAbs().maxCoeff());
}

TEST_CASE("congruence identity is exact") {
  for (int n : {5, 7}) {
    const auto g = build_cmn(n);
    const auto lg = line_graph(g);
    for (unsigned s = 0; s < 100; ++s) {
      const Vector gamma0 = random_positive(g.num_edges(), 100 * n + 2 * s);
      const Vector gamma1 = random_positive(g.num_edges(), 100 * n + 2 * s + 1);
      const double scale =
          line_laplacian(lg, line_weights(lg, gamma1)).norm();
      CHECK(verify_congruence(gamma0, gamma1, lg) < 1e-12 * scale);
    }
  }
}

TEST_CASE("congruence residual positive for inconsistent q") {
  const auto g = build_cmn(5);
  const auto lg = line_graph(g);
  const Vector gamma0 = random_positive(g.num_edges(), 5);
  Vector gamma1 = random_positive(g.num_edges(), 6);
  const Matrix L0 = line_laplacian(lg, line_weights(lg, gamma0));
  const Vector q = discrete_liouville_q(gamma0, gamma1, L0);
  gamma1(3) *= 1.5;  // perturb without recomputing q
  const Matrix L1 = line_laplacian(lg, line_weights(lg, gamma1));
  const Vector w = (gamma1.array() / gamma0.array()).sqrt().matrix();
  Matrix rhs = L0;
  rhs.diagonal() += q;
  rhs = w.asDiagonal() * rhs * w.asDiagonal();
  CHECK((L1 - rhs).norm() > 1e-6);
}

TEST_CASE("liouville_jacobian null vectors and rank") {
  const auto g = build_cmn(5);
  const auto lg = line_graph(g);
  const Vector gamma0 = random_positive(g.num_edges(), 7);
  const Vector gamma = random_positive(g.num_edges(), 8);
  const Matrix jac = liouville_jacobian(gamma0, gamma, lg);
  const double scale = jac.norm();

  CHECK((jac * gamma).norm() < 1e-12 * scale * gamma.norm());
  const Vector left = (gamma.array() / gamma0.array()).matrix();
  CHECK((jac.transpose() * left).norm() < 1e-12 * scale * left.norm());

  Eigen::JacobiSVD<Matrix> svd(jac);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * sv(0)) ++rank;
  CHECK(rank == g.num_edges() - 1);
}

TEST_CASE("liouville_jacobian matches finite differences") {
  const auto g = build_cmn(5);
  const auto lg = line_graph(g);
  const Vector gamma0 = random_positive(g.num_edges(), 9);
  const Vector gamma = random_positive(g.num_edges(), 10);
  const Matrix jac = liouville_jacobian(gamma0, gamma, lg);
  for (int e = 0; e < g.num_edges(); e += 2) {
    const double h = 1e-6 * gamma(e);
    Vector gp = gamma, gm = gamma;
    gp(e) += h;
    gm(e) -= h;
    const Vector fd = (discrete_liouville_q(gamma0, gp, lg) -
                       discrete_liouville_q(gamma0, gm, lg)) /
                      (2.0 * h);
    CHECK((jac.col(e) - fd).norm() < 1e-6 * jac.norm());
  }
}
