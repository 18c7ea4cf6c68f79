#pragma once

#include <cstddef>
#include <vector>

namespace meshgrad {

// Row-major dense matrix for small problems: reference elements (p <= 6),
// element Jacobians (n <= 3) and dense eigenvalue cross-checks in tests.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0) {}

  double& operator()(int i, int j) {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

// All eigenvalues of a symmetric matrix via cyclic Jacobi rotations,
// returned in ascending order. Intended for p <= ~200.
std::vector<double> jacobi_eigenvalues(DenseMatrix a);

// Singular values via one-sided Jacobi column rotations, descending.
std::vector<double> singular_values(DenseMatrix a);

// Determinant / inverse by closed form, n <= 3 only.
double det_small(const DenseMatrix& a);
DenseMatrix inverse_small(const DenseMatrix& a);

}  // namespace meshgrad
