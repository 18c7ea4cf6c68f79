#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meshgrad {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// Square CSR matrix with the full (symmetric) pattern stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  // Accumulates duplicate (row, col) entries.
  static SparseMatrix from_triplets(int n, std::vector<Triplet> triplets);

  int size() const { return n_; }
  std::size_t nonzeros() const { return values_.size(); }

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  // Entry lookup (binary search within the row); zero when not stored.
  double coeff(int i, int j) const;

  // y = A x
  void multiply(const std::vector<double>& x, std::vector<double>& y) const;

  // In-place scale of all stored values.
  void scale(double s);

  double diagonal(int i) const { return coeff(i, i); }

  bool is_symmetric(double tol) const;

  // Zero out row and column `k`, then set the diagonal entry to `diag`.
  // Used for Dirichlet elimination; pattern is kept, values are zeroed.
  void eliminate_row_col(int k, double diag);

 private:
  int n_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

// MatrixMarket "coordinate real symmetric" export (lower triangle).
void write_matrix_market(std::ostream& os, const SparseMatrix& a);
void write_matrix_market_file(const std::string& path, const SparseMatrix& a);

}  // namespace meshgrad
