#include <schrodnet/continuum.hpp>

#include <stdexcept>
#include <vector>

namespace schrodnet {

namespace {

// Face transmissibility from per-side distances and conductivities.
double face_trans(double area, double d1, double s1, double d2, double s2) {
  return area / (d1 / s1 + d2 / s2);
}

}  // namespace

DiskSolver::DiskSolver(const DiskGrid& grid, const DiskField& q,
                       const DiskField* sigma)
    : grid_(&grid) {
  const int nr = grid.nr(), nt = grid.ntheta();
  const double dr = grid.dr(), dt = grid.dtheta();
  if (q.size() != grid.num_cells())
    throw std::invalid_argument("DiskSolver: q size mismatch");
  auto sig = [&](int c) { return sigma ? (*sigma)(c) : 1.0; };

  std::vector<Eigen::Triplet<double>> trip;
  Vector diag = (q.array() * grid.volumes().array()).matrix();

  auto couple = [&](int a, int b, double T) {
    trip.emplace_back(a, b, -T);
    trip.emplace_back(b, a, -T);
    diag(a) += T;
    diag(b) += T;
  };

  // center cell to first ring
  for (int j = 0; j < nt; ++j) {
    const int c = grid.cell(1, j);
    couple(grid.center_cell(), c,
           face_trans(dr * dt, dr, sig(grid.center_cell()), 0.5 * dr, sig(c)));
  }
  for (int i = 1; i < nr - 1; ++i) {
    const double rf = (i + 1) * dr;
    for (int j = 0; j < nt; ++j)
      couple(grid.cell(i, j), grid.cell(i + 1, j),
             face_trans(rf * dt, 0.5 * dr, sig(grid.cell(i, j)), 0.5 * dr,
                        sig(grid.cell(i + 1, j))));
  }
  for (int i = 1; i < nr; ++i) {
    const double half_arc = 0.5 * (i + 0.5) * dr * dt;
    for (int j = 0; j < nt; ++j)
      couple(grid.cell(i, j), grid.cell(i, j + 1),
             face_trans(dr, half_arc, sig(grid.cell(i, j)), half_arc,
                        sig(grid.cell(i, j + 1))));
  }

  // Dirichlet boundary faces at r = 1, half-cell distance
  boundary_trans_.resize(nt);
  for (int j = 0; j < nt; ++j) {
    const int c = grid.cell(nr - 1, j);
    boundary_trans_(j) = dt * sig(c) / (0.5 * dr);
    diag(c) += boundary_trans_(j);
  }

  const int nc = grid.num_cells();
  for (int c = 0; c < nc; ++c) trip.emplace_back(c, c, diag(c));
  A_.resize(nc, nc);
  A_.setFromTriplets(trip.begin(), trip.end());
  factor_.compute(A_);
  if (factor_.info() != Eigen::Success ||
      factor_.vectorD().minCoeff() <= 0.0)
    throw std::runtime_error(
        "DiskSolver: operator is not positive definite (q too negative)");
}

Vector DiskSolver::solve(const Vector& f) const {
  const int nr = grid_->nr(), nt = grid_->ntheta();
  if (f.size() != nt) throw std::invalid_argument("DiskSolver: bad boundary data");
  Vector rhs = Vector::Zero(grid_->num_cells());
  for (int j = 0; j < nt; ++j)
    rhs(grid_->cell(nr - 1, j)) = boundary_trans_(j) * f(j);
  return factor_.solve(rhs);
}

Vector DiskSolver::boundary_currents(const Vector& f, const Vector& cells) const {
  const int nr = grid_->nr(), nt = grid_->ntheta();
  Vector out(nt);
  for (int j = 0; j < nt; ++j)
    out(j) = boundary_trans_(j) * (f(j) - cells(grid_->cell(nr - 1, j)));
  return out;
}

Vector solve_dirichlet(const DiskGrid& grid, const DiskField& q,
                       const Vector& f) {
  return DiskSolver(grid, q).solve(f);
}

DiskField potential_to_conductivity(const DiskGrid& grid, const DiskField& q) {
  const Vector s =
      DiskSolver(grid, q).solve(Vector::Ones(grid.ntheta()));
  return s.array().square().matrix();
}

LumpedData lumped_measurements_full(const DiskGrid& grid, const DiskField& q,
                                    const BoundaryFunctionSet& phi,
                                    const DiskField* sigma) {
  const int n = phi.size(), nt = grid.ntheta();
  DiskSolver solver(grid, q, sigma);
  const Matrix profiles = phi.sample(nt);

  Matrix fields(grid.num_cells(), n);
  Matrix currents(nt, n);
  for (int k = 0; k < n; ++k) {
    const Vector f = profiles.row(k).transpose();
    fields.col(k) = solver.solve(f);
    currents.col(k) = solver.boundary_currents(f, fields.col(k));
  }

  Matrix M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      M(i, j) = M(j, i) = profiles.row(i).dot(currents.col(j));
  MeasurementMatrix mm{M};
  mm.enforce_conservation();
  return {std::move(mm), std::move(fields), profiles};
}

MeasurementMatrix lumped_measurements(const DiskGrid& grid, const DiskField& q,
                                      const BoundaryFunctionSet& phi) {
  return lumped_measurements_full(grid, q, phi).M;
}

double check_liouville_dtn(const DiskGrid& grid, const DiskField& q,
                           const BoundaryFunctionSet& phi) {
  const MeasurementMatrix Ms = lumped_measurements(grid, q, phi);
  const DiskField sigma = potential_to_conductivity(grid, q);
  const DiskField zero = Vector::Zero(grid.num_cells());
  const MeasurementMatrix Mc =
      lumped_measurements_full(grid, zero, phi, &sigma).M;

  const int n = Ms.size();
  double scale = 0.0, worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) scale = std::max(scale, std::abs(Ms.m(i, j)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) worst = std::max(worst, std::abs(Ms.m(i, j) - Mc.m(i, j)));
  return worst / scale;
}

Matrix measurement_jacobian_from_fields(const DiskGrid& grid,
                                        const Matrix& fields,
                                        const std::vector<DiskField>& basis) {
  const int n = static_cast<int>(fields.cols());
  Matrix jac(upper_tri_count(n), basis.size());
  for (size_t b = 0; b < basis.size(); ++b) {
    const Vector w = (basis[b].array() * grid.volumes().array()).matrix();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        jac(upper_tri_index(i, j, n), b) =
            (fields.col(i).array() * fields.col(j).array() * w.array()).sum();
  }
  return jac;
}

Matrix measurement_jacobian(const DiskGrid& grid, const DiskField& q,
                            const BoundaryFunctionSet& phi,
                            const std::vector<DiskField>& basis) {
  const LumpedData data = lumped_measurements_full(grid, q, phi);
  return measurement_jacobian_from_fields(grid, data.fields, basis);
}

}  // namespace schrodnet
