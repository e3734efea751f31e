#include <doctest.h>

#include <schrodnet/inversion.hpp>

#include <cmath>

using namespace schrodnet;

namespace {

struct Setup {
  int n;
  DiskGrid grid;
  BoundaryFunctionSet phi;
  MeasurementMatrix M0;
  MeasurementMatrix Mavg;
  double q_avg;
  PreconditionerContext ctx;

  explicit Setup(int n_, double q_avg_ = 1.0, int res = 48)
      : n(n_),
        grid(res, res),
        phi(BoundaryFunctionSet::raised_cosine(n_)),
        M0(lumped_measurements(grid, Vector::Zero(grid.num_cells()), phi)),
        Mavg(lumped_measurements(grid,
                                 Vector::Constant(grid.num_cells(), q_avg_),
                                 phi)),
        q_avg(q_avg_),
        ctx(PreconditionerContext::build(M0, Mavg, q_avg_)) {}
};

MeasurementMatrix measure_phantom(const Setup& s, int res) {
  const DiskGrid fine(res, res);
  const DiskField q = fine.sample([](double x, double y) {
    return 1.2 * std::exp(-((x - 0.25) * (x - 0.25) + y * y) / 0.2);
  });
  return lumped_measurements(fine, q, s.phi);
}

}  // namespace

TEST_CASE("preconditioner calibration identities") {
  const Setup s(5);
  CHECK(preconditioner_apply(s.ctx, s.M0).norm() < 1e-10);
  const Vector Qa = preconditioner_apply(s.ctx, s.Mavg);
  CHECK((Qa.array() - s.q_avg).abs().maxCoeff() < 1e-10 * s.q_avg);
}

TEST_CASE("preconditioner ignores measurement scaling") {
  const Setup s(5);
  const MeasurementMatrix M = measure_phantom(s, 56);
  const Vector Q = preconditioner_apply(s.ctx, M);
  for (double h : {-0.5, 0.3, 2.0}) {
    const MeasurementMatrix scaled{(1.0 + h) * M.m};
    const Vector Qs = preconditioner_apply(s.ctx, scaled);
    CHECK((Qs - Q).norm() < 1e-10 * Q.norm());
  }
}

TEST_CASE("preconditioner jacobian has a one-dimensional null space") {
  const Setup s(5);
  const MeasurementMatrix M = measure_phantom(s, 56);
  const Matrix DQ = preconditioner_jacobian(s.ctx, M);
  REQUIRE(DQ.rows() == s.ctx.net.num_edges());
  REQUIRE(DQ.cols() == upper_tri_count(s.n));

  Eigen::JacobiSVD<Matrix> svd(DQ);
  const auto& sv = svd.singularValues();
  const int m = static_cast<int>(sv.size());
  CHECK(sv(m - 1) < 1e-10 * sv(0));
  CHECK(sv(m - 2) > 1e-6 * sv(0));

  const double right = (DQ * upper_tri_vec(M.m)).norm() /
                       (DQ.norm() * upper_tri_vec(M.m).norm());
  CHECK(right < 1e-10);
  const Vector z = null_vector(s.ctx, M);
  const double left = (DQ.transpose() * z).norm() / (DQ.norm() * z.norm());
  CHECK(left < 1e-10);
}

TEST_CASE("preconditioner jacobian matches finite differences") {
  const Setup s(5);
  const MeasurementMatrix M = measure_phantom(s, 56);
  const Matrix DQ = preconditioner_jacobian(s.ctx, M);
  const double h = 1e-7 * M.m.cwiseAbs().maxCoeff();
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j < s.n; ++j) {
      const int col = upper_tri_index(i, j, s.n);
      if (col != 0 && col != 3 && col != 7) continue;
      MeasurementMatrix Mp = M, Mm = M;
      Mp.m(i, j) += h;
      Mp.m(j, i) += h;
      Mm.m(i, j) -= h;
      Mm.m(j, i) -= h;
      const Vector fd =
          (preconditioner_apply(s.ctx, Mp) - preconditioner_apply(s.ctx, Mm)) /
          (2.0 * h);
      CHECK((fd - DQ.col(col)).norm() < 1e-4 * DQ.col(col).norm());
    }
}

TEST_CASE("average potential search picks the matching trial") {
  const Setup s(5);
  const MeasurementMatrix M =
      lumped_measurements(s.grid, Vector::Constant(s.grid.num_cells(), 1.0),
                          s.phi);
  const double found =
      estimate_q_avg(M, s.grid, s.phi, {0.0, 0.5, 1.0, 1.5, 2.0});
  CHECK(found == 1.0);
}

TEST_CASE("sensitivity grid lies inside the disk and triangulates") {
  const Setup s(5);
  const SensitivityGrid sg = sensitivity_grid(s.ctx, s.grid, s.phi, s.q_avg);
  REQUIRE(sg.points.rows() == s.ctx.net.num_edges());
  for (int i = 0; i < sg.points.rows(); ++i)
    CHECK(sg.points.row(i).norm() < 1.0);
  CHECK(!sg.tri.triangles.empty());

  const SensitivityGrid again = sensitivity_grid(s.ctx, s.grid, s.phi, s.q_avg);
  CHECK(again.points == sg.points);
}

TEST_CASE("coarse basis is a nonnegative partition of unity") {
  const Setup s(5);
  const SensitivityGrid sg = sensitivity_grid(s.ctx, s.grid, s.phi, s.q_avg);
  const Matrix B = coarse_basis(sg, s.grid);
  CHECK(B.minCoeff() > -1e-10);
  CHECK((B.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-10);
}

TEST_CASE("pseudoinverse solve handles rank deficiency") {
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 1.0;
  Vector b(2);
  b << 2.0, 3.0;
  const Vector x = pinv_solve(A, b, 1e-10);
  CHECK(x(0) == doctest::Approx(2.0));
  CHECK(x(1) == doctest::Approx(0.0));

  Matrix R = Matrix::Random(6, 4);
  const Vector rhs = Vector::Random(6);
  const Vector lsq = R.colPivHouseholderQr().solve(rhs);
  CHECK((pinv_solve(R, rhs, 1e-12) - lsq).norm() < 1e-8 * lsq.norm());
}

TEST_CASE("one Gauss-Newton step sharply reduces the residual") {
  const Setup s(5);
  const MeasurementMatrix M_data = measure_phantom(s, 56);
  const SensitivityGrid sg = sensitivity_grid(s.ctx, s.grid, s.phi, s.q_avg);
  const DiskField q0 =
      initial_guess(sg, preconditioner_apply(s.ctx, M_data), s.grid);

  GaussNewtonOptions opts;
  opts.max_iter = 2;
  const auto hist = gauss_newton(s.ctx, s.grid, s.phi, M_data, q0, opts);
  REQUIRE(hist.size() == 3);
  CHECK(hist[1].res_pre < 0.5 * hist[0].res_pre);
  CHECK(hist[1].res_proj < hist[0].res_proj);
  CHECK(hist[0].q.minCoeff() >= 0.0);
}

TEST_CASE("adding the null direction to the residual leaves the step unchanged") {
  const Setup s(5);
  const MeasurementMatrix M_data = measure_phantom(s, 56);
  const SensitivityGrid sg = sensitivity_grid(s.ctx, s.grid, s.phi, s.q_avg);
  const DiskField q0 =
      initial_guess(sg, preconditioner_apply(s.ctx, M_data), s.grid);
  CHECK(update_invariance_check(s.ctx, s.grid, s.phi, M_data, q0, 0.7, {}));
}

TEST_CASE("zero average potential short-circuits the preconditioner") {
  const DiskGrid grid(48, 48);
  const BoundaryFunctionSet phi = BoundaryFunctionSet::raised_cosine(5);
  const MeasurementMatrix M0 =
      lumped_measurements(grid, Vector::Zero(grid.num_cells()), phi);
  const PreconditionerContext ctx = PreconditionerContext::build(M0, M0, 0.0);
  CHECK(preconditioner_apply(ctx, M0).isZero());
}
