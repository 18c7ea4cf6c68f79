#include "meshgrad/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include "meshgrad/errors.hpp"

namespace meshgrad {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

std::vector<double> spmv(const SparseMatrix& a, const std::vector<double>& x) {
  if (a.size() != static_cast<int>(x.size()))
    throw DimensionMismatch("spmv: matrix/vector size mismatch");
  std::vector<double> y;
  a.multiply(x, y);
  return y;
}

std::vector<double> cg_solve(const SparseMatrix& a, const std::vector<double>& b,
                             double tol, int max_iter, const std::vector<double>* x0) {
  const int n = a.size();
  if (n != static_cast<int>(b.size()))
    throw DimensionMismatch("cg_solve: matrix/vector size mismatch");

  const double bnorm = norm2(b);
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  if (bnorm == 0.0) return x;

  std::vector<double> r = b;
  if (x0 != nullptr && static_cast<int>(x0->size()) == n) {
    x = *x0;
    std::vector<double> ax;
    a.multiply(x, ax);
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] -= ax[static_cast<std::size_t>(i)];
  }
  std::vector<double> p = r, ap;
  double rr = dot(r, r);
  if (std::sqrt(rr) <= tol * bnorm) return x;

  for (int it = 0; it < max_iter; ++it) {
    a.multiply(p, ap);
    const double pap = dot(p, ap);
    if (pap <= 0.0) throw MaxIterExceeded("cg_solve: matrix not positive definite");
    const double alpha = rr / pap;
    axpy(alpha, p, x);
    axpy(-alpha, ap, r);
    const double rr_new = dot(r, r);
    if (std::sqrt(rr_new) <= tol * bnorm) return x;
    const double beta = rr_new / rr;
    rr = rr_new;
    for (int i = 0; i < n; ++i)
      p[static_cast<std::size_t>(i)] = r[static_cast<std::size_t>(i)] + beta * p[static_cast<std::size_t>(i)];
  }
  throw MaxIterExceeded("cg_solve: no convergence within max_iter");
}

SsorPreconditioner::SsorPreconditioner(const SparseMatrix& a) : a_(&a) {
  inv_diag_.resize(static_cast<std::size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i) {
    const double d = a.coeff(i, i);
    inv_diag_[static_cast<std::size_t>(i)] = d != 0.0 ? 1.0 / d : 0.0;
  }
}

void SsorPreconditioner::apply(const std::vector<double>& r, std::vector<double>& z) const {
  const SparseMatrix& a = *a_;
  const int n = a.size();
  const auto& rp = a.row_ptr();
  const auto& ci = a.col_idx();
  const auto& v = a.values();

  // M = (D + L) D^{-1} (D + U); apply M^{-1} r in three substitution passes.
  // Forward: (D + L) y = r
  z.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = r[static_cast<std::size_t>(i)];
    for (int k = rp[static_cast<std::size_t>(i)]; k < rp[static_cast<std::size_t>(i) + 1]; ++k) {
      const int j = ci[static_cast<std::size_t>(k)];
      if (j < i) s -= v[static_cast<std::size_t>(k)] * z[static_cast<std::size_t>(j)];
    }
    z[static_cast<std::size_t>(i)] = s * inv_diag_[static_cast<std::size_t>(i)];
  }
  // Scale: y <- D y
  for (int i = 0; i < n; ++i) {
    const double d = inv_diag_[static_cast<std::size_t>(i)];
    if (d != 0.0) z[static_cast<std::size_t>(i)] /= d;
  }
  // Backward: (D + U) z = D y
  for (int i = n - 1; i >= 0; --i) {
    double s = z[static_cast<std::size_t>(i)];
    for (int k = rp[static_cast<std::size_t>(i)]; k < rp[static_cast<std::size_t>(i) + 1]; ++k) {
      const int j = ci[static_cast<std::size_t>(k)];
      if (j > i) s -= v[static_cast<std::size_t>(k)] * z[static_cast<std::size_t>(j)];
    }
    z[static_cast<std::size_t>(i)] = s * inv_diag_[static_cast<std::size_t>(i)];
  }
}

std::vector<double> pcg_solve(const SparseMatrix& a, const std::vector<double>& b,
                              double tol, int max_iter, const SsorPreconditioner& prec,
                              const std::vector<double>* x0) {
  const int n = a.size();
  if (n != static_cast<int>(b.size()))
    throw DimensionMismatch("pcg_solve: matrix/vector size mismatch");

  const double bnorm = norm2(b);
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  if (bnorm == 0.0) return x;

  std::vector<double> r = b;
  if (x0 != nullptr && static_cast<int>(x0->size()) == n) {
    x = *x0;
    std::vector<double> ax;
    a.multiply(x, ax);
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] -= ax[static_cast<std::size_t>(i)];
  }
  std::vector<double> z, p, ap;
  prec.apply(r, z);
  p = z;
  double rz = dot(r, z);

  for (int it = 0; it < max_iter; ++it) {
    if (norm2(r) <= tol * bnorm) return x;
    a.multiply(p, ap);
    const double pap = dot(p, ap);
    if (pap <= 0.0) throw MaxIterExceeded("pcg_solve: matrix not positive definite");
    const double alpha = rz / pap;
    axpy(alpha, p, x);
    axpy(-alpha, ap, r);
    prec.apply(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i)
      p[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] + beta * p[static_cast<std::size_t>(i)];
  }
  if (norm2(r) <= tol * bnorm) return x;
  throw MaxIterExceeded("pcg_solve: no convergence within max_iter");
}

namespace {

// Shared driver: iterate v <- normalize(op(v)), track the Rayleigh quotient
// theta = v^T A v, and stop either on a small eigenpair residual
// ||A v - theta v|| <= tol * |theta| or when theta stagnates over a window
// (clustered extreme eigenvalues; the error is then below the cluster width).
template <class Op>
double extreme_by_iteration(const SparseMatrix& a, Op&& op, std::vector<double> v,
                            double tol, int max_iter, const char* label) {
  const int window = 40;
  const double stagnation = 1e-13;
  double theta_prev_window = 0.0;
  int since_window = 0;

  double theta = 0.0;
  std::vector<double> av;
  for (int it = 0; it < max_iter; ++it) {
    const double nv = norm2(v);
    if (nv == 0.0) throw EigFailed(std::string(label) + ": zero iterate");
    for (double& x : v) x /= nv;

    a.multiply(v, av);
    theta = dot(v, av);
    double resid = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double r = av[i] - theta * v[i];
      resid += r * r;
    }
    resid = std::sqrt(resid);
    if (resid <= tol * std::abs(theta)) return theta;

    if (since_window == 0) {
      theta_prev_window = theta;
    } else if (since_window >= window) {
      if (std::abs(theta - theta_prev_window) <= stagnation * std::abs(theta)) return theta;
      theta_prev_window = theta;
      since_window = 0;
    }
    ++since_window;

    v = op(v, av);
  }
  throw EigFailed(std::string(label) + ": no convergence within iteration budget");
}

}  // namespace

SpectralSummary extreme_eigs(const SparseMatrix& a, double tol, std::uint64_t seed) {
  const int n = a.size();
  if (n == 0) throw DimensionMismatch("extreme_eigs: empty matrix");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> v0(static_cast<std::size_t>(n));
  for (double& x : v0) x = unit(rng);

  SpectralSummary summary;
  summary.method_tol = tol;

  // lambda_max: power iteration (A v is already available as `av`).
  summary.lambda_max = extreme_by_iteration(
      a,
      [](const std::vector<double>& /*v*/, const std::vector<double>& av) { return av; },
      v0, tol, 2000000, "extreme_eigs[max]");

  // lambda_min: inverse iteration with warm-started CG solves.
  std::vector<double> warm;
  auto inverse_op = [&](const std::vector<double>& v,
                        const std::vector<double>& /*av*/) {
    std::vector<double> z = cg_solve(a, v, 1e-10, std::max(20 * a.size(), 2000),
                                     warm.empty() ? nullptr : &warm);
    warm = z;
    return z;
  };
  try {
    summary.lambda_min =
        extreme_by_iteration(a, inverse_op, v0, tol, 200000, "extreme_eigs[min]");
  } catch (const MaxIterExceeded& e) {
    throw EigFailed(std::string("extreme_eigs[min]: inner solve failed: ") + e.what());
  }

  if (summary.lambda_min <= 0.0)
    throw EigFailed("extreme_eigs: non-positive smallest eigenvalue");
  summary.kappa = summary.lambda_max / summary.lambda_min;
  return summary;
}

BandedCholesky::BandedCholesky(const SparseMatrix& a, std::vector<int> perm,
                               int max_bandwidth) {
  const int n = a.size();
  if (n == 0) return;
  if (perm.empty()) {
    perm.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  }
  if (static_cast<int>(perm.size()) != n) throw DimensionMismatch("BandedCholesky: bad permutation size");
  std::vector<int> iperm(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) iperm[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
  for (int i = 0; i < n; ++i)
    if (iperm[static_cast<std::size_t>(i)] < 0)
      throw DimensionMismatch("BandedCholesky: permutation is not a bijection");

  const std::vector<int>& rp = a.row_ptr();
  const std::vector<int>& ci = a.col_idx();
  const std::vector<double>& av = a.values();

  int band = 0;
  for (int r = 0; r < n; ++r) {
    const int pr = iperm[static_cast<std::size_t>(r)];
    for (int k = rp[static_cast<std::size_t>(r)]; k < rp[static_cast<std::size_t>(r) + 1]; ++k) {
      const int pc = iperm[static_cast<std::size_t>(ci[static_cast<std::size_t>(k)])];
      band = std::max(band, std::abs(pr - pc));
    }
  }
  if (band > max_bandwidth) return;

  const std::size_t stride = static_cast<std::size_t>(band) + 1;
  std::vector<double> f(static_cast<std::size_t>(n) * stride, 0.0);
  // Scatter the permuted lower triangle into column bands: entry (i, j) with
  // i >= j lands at f[j * stride + (i - j)].
  for (int r = 0; r < n; ++r) {
    const int pr = iperm[static_cast<std::size_t>(r)];
    for (int k = rp[static_cast<std::size_t>(r)]; k < rp[static_cast<std::size_t>(r) + 1]; ++k) {
      const int pc = iperm[static_cast<std::size_t>(ci[static_cast<std::size_t>(k)])];
      if (pr >= pc)
        f[static_cast<std::size_t>(pc) * stride + static_cast<std::size_t>(pr - pc)] =
            av[static_cast<std::size_t>(k)];
    }
  }

  // In-place banded Cholesky: column j of L overwrites column j of A.
  for (int j = 0; j < n; ++j) {
    double* colj = f.data() + static_cast<std::size_t>(j) * stride;
    for (int k = std::max(0, j - band); k < j; ++k) {
      const double ljk = f[static_cast<std::size_t>(k) * stride + static_cast<std::size_t>(j - k)];
      if (ljk == 0.0) continue;
      const double* colk = f.data() + static_cast<std::size_t>(k) * stride;
      const int last = std::min(n - 1, k + band);
      for (int i = j; i <= last; ++i) colj[i - j] -= ljk * colk[i - k];
    }
    if (colj[0] <= 0.0) return;  // not positive definite; stay invalid
    const double d = std::sqrt(colj[0]);
    colj[0] = d;
    const int last = std::min(n - 1, j + band);
    for (int i = j + 1; i <= last; ++i) colj[i - j] /= d;
  }

  n_ = n;
  band_ = band;
  perm_ = std::move(perm);
  factor_ = std::move(f);
  valid_ = true;
}

std::vector<double> BandedCholesky::solve(const std::vector<double>& b) const {
  if (!valid_) throw DimensionMismatch("BandedCholesky::solve: invalid factorization");
  if (static_cast<int>(b.size()) != n_) throw DimensionMismatch("BandedCholesky::solve: size mismatch");
  const std::size_t stride = static_cast<std::size_t>(band_) + 1;
  std::vector<double> y(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    y[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)])];
  // Forward substitution L y' = y.
  for (int j = 0; j < n_; ++j) {
    const double* colj = factor_.data() + static_cast<std::size_t>(j) * stride;
    const double yj = y[static_cast<std::size_t>(j)] / colj[0];
    y[static_cast<std::size_t>(j)] = yj;
    const int last = std::min(n_ - 1, j + band_);
    for (int i = j + 1; i <= last; ++i) y[static_cast<std::size_t>(i)] -= colj[i - j] * yj;
  }
  // Backward substitution L^T z = y'.
  for (int j = n_ - 1; j >= 0; --j) {
    const double* colj = factor_.data() + static_cast<std::size_t>(j) * stride;
    double s = y[static_cast<std::size_t>(j)];
    const int last = std::min(n_ - 1, j + band_);
    for (int i = j + 1; i <= last; ++i) s -= colj[i - j] * y[static_cast<std::size_t>(i)];
    y[static_cast<std::size_t>(j)] = s / colj[0];
  }
  std::vector<double> x(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    x[static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)])] = y[static_cast<std::size_t>(i)];
  return x;
}

double condition_bound(const MeshMetrics& metrics, const ReferenceElement& element) {
  double prod = 1.0;
  for (int i = 0; i < metrics.dim; ++i)
    prod *= metrics.h_ratio_directional[static_cast<std::size_t>(i)];
  return metrics.p_max * (element.lambda_hat_max / element.lambda_hat_min) * prod;
}

double condition_bound_product(const MeshMetrics& metrics, const ReferenceElement& element) {
  return metrics.p_max * (element.lambda_hat_max / element.lambda_hat_min) *
         metrics.h_ratio_product;
}

}  // namespace meshgrad
