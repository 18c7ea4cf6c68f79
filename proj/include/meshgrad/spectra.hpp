#pragma once

#include <cstdint>
#include <vector>

#include "meshgrad/mesh.hpp"
#include "meshgrad/reference_element.hpp"
#include "meshgrad/sparse.hpp"

namespace meshgrad {

// y = A x with dimension checking.
std::vector<double> spmv(const SparseMatrix& a, const std::vector<double>& x);

// Unpreconditioned CG to relative residual tol; throws MaxIterExceeded.
// b = 0 returns x = 0 immediately. Optional warm start.
std::vector<double> cg_solve(const SparseMatrix& a, const std::vector<double>& b,
                             double tol, int max_iter,
                             const std::vector<double>* x0 = nullptr);

// Symmetric Gauss-Seidel (SSOR, omega = 1) preconditioner for PCG.
class SsorPreconditioner {
 public:
  explicit SsorPreconditioner(const SparseMatrix& a);
  void apply(const std::vector<double>& r, std::vector<double>& z) const;

 private:
  const SparseMatrix* a_;
  std::vector<double> inv_diag_;
};

// Preconditioned CG, true-residual stopping. Throws MaxIterExceeded.
std::vector<double> pcg_solve(const SparseMatrix& a, const std::vector<double>& b,
                              double tol, int max_iter,
                              const SsorPreconditioner& prec,
                              const std::vector<double>* x0 = nullptr);

// Banded Cholesky factorization of an SPD matrix under a symmetric
// permutation (perm maps new index -> original index; empty = identity).
// Construction leaves the object invalid — and solve unusable — when the
// permuted bandwidth exceeds max_bandwidth or a pivot is not positive;
// callers then fall back to an iterative solver. Solves cost
// O(n * bandwidth) per right-hand side and are exact to rounding.
class BandedCholesky {
 public:
  BandedCholesky() = default;
  BandedCholesky(const SparseMatrix& a, std::vector<int> perm,
                 int max_bandwidth);

  bool valid() const { return valid_; }
  int bandwidth() const { return band_; }
  std::vector<double> solve(const std::vector<double>& b) const;

 private:
  bool valid_ = false;
  int n_ = 0;
  int band_ = 0;
  std::vector<int> perm_;
  std::vector<double> factor_;  // column bands of L, stride band_ + 1
};

struct SpectralSummary {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double kappa = 0.0;
  double method_tol = 0.0;
};

// Extreme eigenvalues of an SPD matrix: lambda_max by power iteration,
// lambda_min by inverse iteration with warm-started CG inner solves.
// Iterations stop on the eigenpair residual ||A v - theta v|| <= tol * theta
// or on stagnation of the Rayleigh quotient (clustered spectra), whichever
// comes first. Throws EigFailed when neither triggers within the iteration
// budget and DimensionMismatch on empty input.
SpectralSummary extreme_eigs(const SparseMatrix& a, double tol,
                             std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

// Mesh-based upper bound for the mass-matrix condition number:
//   p_max * (lambda_hat_max / lambda_hat_min) * prod_i h_ratio_directional[i].
double condition_bound(const MeshMetrics& metrics, const ReferenceElement& element);

// Tighter variant using the cell-volume ratio instead of the directional
// product: p_max * (lambda_hat_max / lambda_hat_min) * h_ratio_product.
double condition_bound_product(const MeshMetrics& metrics,
                               const ReferenceElement& element);

}  // namespace meshgrad
