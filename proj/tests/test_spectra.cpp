#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "meshgrad/assembly.hpp"
#include "meshgrad/dense.hpp"
#include "meshgrad/errors.hpp"
#include "meshgrad/function_space.hpp"
#include "meshgrad/mesh.hpp"
#include "meshgrad/reference_element.hpp"
#include "meshgrad/sparse.hpp"
#include "meshgrad/spectra.hpp"

#include "testutil.hpp"

using namespace meshgrad;
using testutil::close_abs;
using testutil::close_rel;

namespace {

SparseMatrix small_spd() {
  std::vector<Triplet> t{{0, 0, 4.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 3.0}};
  return SparseMatrix::from_triplets(2, std::move(t));
}

SparseMatrix reference_mass_cg1() {
  std::vector<Triplet> t{{0, 0, 1.0 / 3.0},
                         {0, 1, 1.0 / 6.0},
                         {1, 0, 1.0 / 6.0},
                         {1, 1, 1.0 / 3.0}};
  return SparseMatrix::from_triplets(2, std::move(t));
}

std::vector<double> random_vec(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = dist(rng);
  return v;
}

double rel_residual(const SparseMatrix& a, const std::vector<double>& x,
                    const std::vector<double>& b) {
  std::vector<double> ax;
  a.multiply(x, ax);
  double rn = 0.0, bn = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    rn += (ax[i] - b[i]) * (ax[i] - b[i]);
    bn += b[i] * b[i];
  }
  return std::sqrt(rn) / std::max(std::sqrt(bn), 1e-300);
}

}  // namespace

TEST_CASE("sparse matrix assembly and products") {
  // duplicates accumulate
  std::vector<Triplet> t{{0, 0, 1.0}, {0, 0, 1.0}, {0, 1, 0.5}, {1, 0, 0.5},
                         {1, 1, 2.0}};
  const SparseMatrix a = SparseMatrix::from_triplets(2, std::move(t));
  CHECK(a.size() == 2);
  CHECK(close_abs(a.coeff(0, 0), 2.0, 1e-15));
  CHECK(close_abs(a.coeff(0, 1), 0.5, 1e-15));
  CHECK(close_abs(a.coeff(1, 1), 2.0, 1e-15));
  CHECK(a.coeff(1, 0) == a.coeff(0, 1));
  CHECK(a.is_symmetric(0.0));

  const std::vector<double> y = spmv(a, {1.0, 1.0});
  CHECK(close_abs(y[0], 2.5, 1e-15));
  CHECK(close_abs(y[1], 2.5, 1e-15));

  CHECK_THROWS_AS(spmv(a, {1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST_CASE("conjugate gradients on small systems") {
  const SparseMatrix a = small_spd();

  const std::vector<double> x = cg_solve(a, {1.0, 2.0}, 1e-14, 100);
  CHECK(close_abs(x[0], 1.0 / 11.0, 1e-12));
  CHECK(close_abs(x[1], 7.0 / 11.0, 1e-12));

  // zero right-hand side short-circuits to zero
  const std::vector<double> z = cg_solve(a, {0.0, 0.0}, 1e-14, 0);
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 0.0);

  CHECK_THROWS_AS(cg_solve(a, {1.0, 2.0}, 1e-16, 0), MaxIterExceeded);
  CHECK_THROWS_AS(cg_solve(a, {1.0, 2.0, 3.0}, 1e-14, 10), DimensionMismatch);

  // a singular system breaks down immediately
  std::vector<Triplet> zt{{0, 0, 0.0}, {1, 1, 0.0}};
  const SparseMatrix zero = SparseMatrix::from_triplets(2, std::move(zt));
  CHECK_THROWS_AS(cg_solve(zero, {1.0, 0.0}, 1e-14, 10), MaxIterExceeded);
}

TEST_CASE("preconditioned and plain CG agree") {
  const Mesh mesh = build_graded_mesh(1, {0}, {0.4, 0.4, 0.1, 0.1});
  const FunctionSpace space = make_function_space(mesh, 3);
  const SparseMatrix gram = assemble_gram(space, InnerProduct::H1Full);

  std::mt19937_64 rng(7);
  const std::vector<double> b = random_vec(rng, gram.size());

  const std::vector<double> x1 = cg_solve(gram, b, 1e-13, 10000);
  const SsorPreconditioner prec(gram);
  const std::vector<double> x2 = pcg_solve(gram, b, 1e-13, 10000, prec);
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(close_abs(x1[i], x2[i], 1e-9));
  CHECK(rel_residual(gram, x2, b) <= 1e-12);

  // warm start at the exact solution stays there
  const std::vector<double> x3 = pcg_solve(gram, b, 1e-13, 10000, prec, &x1);
  CHECK(rel_residual(gram, x3, b) <= 1e-12);
}

TEST_CASE("SSOR preconditioner on a diagonal matrix is the inverse") {
  std::vector<Triplet> t{{0, 0, 2.0}, {1, 1, 4.0}};
  const SparseMatrix d = SparseMatrix::from_triplets(2, std::move(t));
  const SsorPreconditioner prec(d);
  std::vector<double> z;
  prec.apply({2.0, 4.0}, z);
  CHECK(close_abs(z[0], 1.0, 1e-14));
  CHECK(close_abs(z[1], 1.0, 1e-14));
}

TEST_CASE("banded Cholesky matches iterative solves") {
  // pentadiagonal SPD matrix
  const int n = 60;
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 6.0 + 0.05 * i});
    if (i + 1 < n) {
      t.push_back({i, i + 1, -2.0});
      t.push_back({i + 1, i, -2.0});
    }
    if (i + 2 < n) {
      t.push_back({i, i + 2, 0.5});
      t.push_back({i + 2, i, 0.5});
    }
  }
  const SparseMatrix a = SparseMatrix::from_triplets(n, std::move(t));

  const BandedCholesky chol(a, {}, 10);
  REQUIRE(chol.valid());
  CHECK(chol.bandwidth() == 2);

  std::mt19937_64 rng(11);
  const std::vector<double> b = random_vec(rng, n);
  const std::vector<double> x_direct = chol.solve(b);
  const std::vector<double> x_cg = cg_solve(a, b, 1e-14, 10000);
  for (int i = 0; i < n; ++i)
    CHECK(close_abs(x_direct[static_cast<std::size_t>(i)], x_cg[static_cast<std::size_t>(i)], 1e-9));
  CHECK(rel_residual(a, x_direct, b) <= 1e-12);

  // reversal permutation keeps the bandwidth and the solution
  std::vector<int> rev(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rev[static_cast<std::size_t>(i)] = n - 1 - i;
  const BandedCholesky chol_rev(a, rev, 10);
  REQUIRE(chol_rev.valid());
  const std::vector<double> x_rev = chol_rev.solve(b);
  for (int i = 0; i < n; ++i)
    CHECK(close_abs(x_rev[static_cast<std::size_t>(i)], x_direct[static_cast<std::size_t>(i)], 1e-10));

  // solving with a mismatched right-hand side is rejected
  CHECK_THROWS_AS(chol.solve(std::vector<double>(static_cast<std::size_t>(n - 1), 1.0)),
                  DimensionMismatch);
}

TEST_CASE("banded Cholesky rejects what it cannot factor") {
  std::vector<Triplet> t{{0, 0, 1.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 1.0},
                         {1, 2, -1.0}, {2, 1, -1.0}, {2, 2, 1.0}};
  const SparseMatrix tri = SparseMatrix::from_triplets(3, std::move(t));

  // bandwidth larger than allowed
  const BandedCholesky too_narrow(tri, {}, 0);
  CHECK_FALSE(too_narrow.valid());
  CHECK_THROWS_AS(too_narrow.solve({1.0, 1.0, 1.0}), DimensionMismatch);

  // indefinite matrix: a pivot fails
  std::vector<Triplet> it{{0, 0, 1.0}, {1, 1, -1.0}};
  const SparseMatrix indef = SparseMatrix::from_triplets(2, std::move(it));
  CHECK_FALSE(BandedCholesky(indef, {}, 5).valid());

  // default-constructed object is unusable
  const BandedCholesky none;
  CHECK_FALSE(none.valid());

  // malformed permutations are rejected outright
  const SparseMatrix a = small_spd();
  CHECK_THROWS_AS(BandedCholesky(a, {0}, 5), DimensionMismatch);
  CHECK_THROWS_AS(BandedCholesky(a, {0, 0}, 5), DimensionMismatch);
}

TEST_CASE("banded Cholesky solves an elliptic gram system") {
  const Mesh mesh = build_graded_mesh(2, {6, 6});
  const FunctionSpace space = make_function_space(mesh, 1);
  const SparseMatrix gram = assemble_gram(space, InnerProduct::H1Full);

  const BandedCholesky chol(gram, {}, 200);
  REQUIRE(chol.valid());
  std::mt19937_64 rng(23);
  const std::vector<double> b = random_vec(rng, gram.size());
  const std::vector<double> x = chol.solve(b);
  CHECK(rel_residual(gram, x, b) <= 1e-12);
}

TEST_CASE("extreme eigenvalues of the reference interval mass matrix") {
  const SparseMatrix m = reference_mass_cg1();
  const SpectralSummary s = extreme_eigs(m, 1e-10);
  CHECK(close_rel(s.lambda_min, 1.0 / 6.0, 1e-8));
  CHECK(close_rel(s.lambda_max, 0.5, 1e-8));
  CHECK(close_rel(s.kappa, 3.0, 1e-7));

  // same seed, same answer
  const SpectralSummary s2 = extreme_eigs(m, 1e-10);
  CHECK(s.kappa == s2.kappa);

  CHECK_THROWS_AS(extreme_eigs(SparseMatrix(), 1e-8), DimensionMismatch);
}

TEST_CASE("scaled identity has unit condition number") {
  const int n = 40;
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) t.push_back({i, i, 2.5});
  const SparseMatrix a = SparseMatrix::from_triplets(n, std::move(t));
  const SpectralSummary s = extreme_eigs(a, 1e-10);
  CHECK(close_rel(s.lambda_min, 2.5, 1e-8));
  CHECK(close_rel(s.lambda_max, 2.5, 1e-8));
  CHECK(close_rel(s.kappa, 1.0, 1e-8));
}

TEST_CASE("mass condition numbers on the uniform interval by element order") {
  // Frozen values computed with a dense eigenvalue method on the same
  // 64-cell uniform matrices.
  const double expected[5] = {3.998426876204, 5.405447217778, 7.816265334206,
                              12.203914147560, 20.842443676604};
  const Mesh mesh = build_graded_mesh(1, {64});
  double prev = 0.0;
  for (int order = 1; order <= 5; ++order) {
    const FunctionSpace space = make_function_space(mesh, order);
    const SparseMatrix mass = assemble_mass(space);
    const SpectralSummary s = extreme_eigs(mass, 1e-9);
    CHECK(close_rel(s.kappa, expected[order - 1], 1e-6));
    CHECK(s.kappa > prev);
    prev = s.kappa;

    if (order <= 3) {  // dense cross-check while the matrix stays small
      const std::vector<double> eigs =
          jacobi_eigenvalues(testutil::to_dense(mass));
      CHECK(close_rel(s.kappa, eigs.back() / eigs.front(), 1e-6));
    }
  }
}

TEST_CASE("mesh-derived condition bounds") {
  const ReferenceElement el = reference_element(1, 1);

  const Mesh uniform = build_graded_mesh(1, {64});
  const double b_uniform = condition_bound(mesh_metrics(uniform), el);
  CHECK(close_rel(b_uniform, 6.0, 1e-12));  // 2 * 3 * 1

  const Mesh graded = build_graded_mesh(1, {0}, {0.4, 0.4, 0.1, 0.1});
  const double b_graded = condition_bound(mesh_metrics(graded), el);
  CHECK(close_rel(b_graded, 24.0, 1e-12));  // 2 * 3 * 4

  // bounds dominate the measured condition numbers
  for (const Mesh& mesh : {uniform, graded}) {
    for (int order = 1; order <= 3; ++order) {
      const FunctionSpace space = make_function_space(mesh, order);
      const SparseMatrix mass = assemble_mass(space);
      const SpectralSummary s = extreme_eigs(mass, 1e-8);
      const MeshMetrics metrics = mesh_metrics(mesh);
      CHECK(s.kappa <= condition_bound(metrics, space.element));
      CHECK(s.kappa <= condition_bound_product(metrics, space.element));
    }
  }
}

TEST_CASE("volume-based bound is no looser than the directional bound") {
  const ReferenceElement el = reference_element(2, 1);
  // grading on both axes: the directional product double-counts
  Mesh mesh = build_graded_mesh(2, {0, 4}, {0.4, 0.4, 0.1, 0.1});
  mesh = refine_subregion(mesh, 1, 0.0, 0.5);
  const MeshMetrics metrics = mesh_metrics(mesh);
  CHECK(condition_bound_product(metrics, el) <=
        condition_bound(metrics, el) + 1e-12);

  // in one dimension the two coincide
  const MeshMetrics m1 =
      mesh_metrics(build_graded_mesh(1, {0}, {0.4, 0.4, 0.1, 0.1}));
  const ReferenceElement el1 = reference_element(1, 1);
  CHECK(close_rel(condition_bound_product(m1, el1), condition_bound(m1, el1), 1e-12));
}

TEST_CASE("mass condition number is stable under uniform refinement") {
  std::vector<double> spacings(8, 0.1);
  spacings.insert(spacings.end(), 8, 0.025);  // ratio 4, 16 cells
  const Mesh coarse = build_graded_mesh(1, {0}, spacings);
  const Mesh fine = uniform_refine(coarse);
  const SpectralSummary sc =
      extreme_eigs(assemble_mass(make_function_space(coarse, 1)), 1e-9);
  const SpectralSummary sf =
      extreme_eigs(assemble_mass(make_function_space(fine, 1)), 1e-9);
  CHECK(std::abs(sf.kappa - sc.kappa) <= 0.05 * sc.kappa);
}
