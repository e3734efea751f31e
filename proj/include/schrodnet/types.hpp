#pragma once

#include <Eigen/Core>
#include <Eigen/Dense>
#include <array>
#include <vector>

namespace schrodnet {

using Scalar = double;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Points2 = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// Number of entries in the strict upper triangle of an n x n matrix.
inline int upper_tri_count(int n) { return n * (n - 1) / 2; }

/// Linear index of entry (i,j), i < j, in the strict upper triangle,
/// enumerated row by row.
inline int upper_tri_index(int i, int j, int n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Extract the strict upper triangle of a square matrix as a vector.
inline Vector upper_tri_vec(const Matrix& A) {
  const int n = static_cast<int>(A.rows());
  Vector v(upper_tri_count(n));
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v(k++) = A(i, j);
  return v;
}

}  // namespace schrodnet
