#include "meshgrad/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "meshgrad/errors.hpp"

namespace meshgrad {

SparseMatrix SparseMatrix::from_triplets(int n, std::vector<Triplet> triplets) {
  for (const Triplet& t : triplets)
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
      throw DimensionMismatch("from_triplets: index out of range");

  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m;
  m.n_ = n;
  m.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < triplets.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < triplets.size() && triplets[j].row == triplets[i].row &&
           triplets[j].col == triplets[i].col) {
      sum += triplets[j].value;
      ++j;
    }
    m.col_idx_.push_back(triplets[i].col);
    m.values_.push_back(sum);
    m.row_ptr_[static_cast<std::size_t>(triplets[i].row) + 1] += 1;
    i = j;
  }
  for (int r = 0; r < n; ++r)
    m.row_ptr_[static_cast<std::size_t>(r) + 1] += m.row_ptr_[static_cast<std::size_t>(r)];
  return m;
}

double SparseMatrix::coeff(int i, int j) const {
  const int lo = row_ptr_[static_cast<std::size_t>(i)];
  const int hi = row_ptr_[static_cast<std::size_t>(i) + 1];
  const auto begin = col_idx_.begin() + lo, end = col_idx_.begin() + hi;
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

void SparseMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
  if (static_cast<int>(x.size()) != n_)
    throw DimensionMismatch("SparseMatrix::multiply: size mismatch");
  y.assign(static_cast<std::size_t>(n_), 0.0);
  for (int r = 0; r < n_; ++r) {
    double s = 0.0;
    for (int k = row_ptr_[static_cast<std::size_t>(r)]; k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k)
      s += values_[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(col_idx_[static_cast<std::size_t>(k)])];
    y[static_cast<std::size_t>(r)] = s;
  }
}

void SparseMatrix::scale(double s) {
  for (double& v : values_) v *= s;
}

bool SparseMatrix::is_symmetric(double tol) const {
  for (int r = 0; r < n_; ++r)
    for (int k = row_ptr_[static_cast<std::size_t>(r)]; k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k) {
      const int c = col_idx_[static_cast<std::size_t>(k)];
      const double v = values_[static_cast<std::size_t>(k)];
      if (std::abs(v - coeff(c, r)) > tol * (1.0 + std::abs(v))) return false;
    }
  return true;
}

void SparseMatrix::eliminate_row_col(int k, double diag) {
  for (int p = row_ptr_[static_cast<std::size_t>(k)]; p < row_ptr_[static_cast<std::size_t>(k) + 1]; ++p)
    values_[static_cast<std::size_t>(p)] = col_idx_[static_cast<std::size_t>(p)] == k ? diag : 0.0;
  for (int r = 0; r < n_; ++r) {
    if (r == k) continue;
    const int lo = row_ptr_[static_cast<std::size_t>(r)];
    const int hi = row_ptr_[static_cast<std::size_t>(r) + 1];
    const auto begin = col_idx_.begin() + lo, end = col_idx_.begin() + hi;
    const auto it = std::lower_bound(begin, end, k);
    if (it != end && *it == k) values_[static_cast<std::size_t>(it - col_idx_.begin())] = 0.0;
  }
}

void write_matrix_market(std::ostream& os, const SparseMatrix& a) {
  os << "%%MatrixMarket matrix coordinate real symmetric\n";
  std::size_t count = 0;
  for (int r = 0; r < a.size(); ++r)
    for (int k = a.row_ptr()[static_cast<std::size_t>(r)]; k < a.row_ptr()[static_cast<std::size_t>(r) + 1]; ++k)
      if (a.col_idx()[static_cast<std::size_t>(k)] <= r) ++count;
  os << a.size() << ' ' << a.size() << ' ' << count << '\n';
  char buf[64];
  for (int r = 0; r < a.size(); ++r) {
    for (int k = a.row_ptr()[static_cast<std::size_t>(r)]; k < a.row_ptr()[static_cast<std::size_t>(r) + 1]; ++k) {
      const int c = a.col_idx()[static_cast<std::size_t>(k)];
      if (c > r) continue;
      std::snprintf(buf, sizeof(buf), "%.17g", a.values()[static_cast<std::size_t>(k)]);
      os << (r + 1) << ' ' << (c + 1) << ' ' << buf << '\n';
    }
  }
}

void write_matrix_market_file(const std::string& path, const SparseMatrix& a) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_matrix_market_file: cannot open " + path);
  write_matrix_market(os, a);
}

}  // namespace meshgrad
