#pragma once

// Shared helpers for the test suites: tolerance predicates, dense
// conversions, independent quadrature oracles for local mass matrices, and
// seeded random graded meshes. The oracles deliberately avoid the library's
// reference-element, quadrature, and geometry code paths so that agreement
// is a genuine cross-check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "meshgrad/dense.hpp"
#include "meshgrad/mesh.hpp"
#include "meshgrad/sparse.hpp"

namespace testutil {

inline bool close_abs(double a, double b, double tol) {
  return std::abs(a - b) <= tol;
}

inline bool close_rel(double a, double b, double tol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= tol * std::max(scale, 1e-300);
}

inline meshgrad::DenseMatrix to_dense(const meshgrad::SparseMatrix& a) {
  meshgrad::DenseMatrix d(a.size(), a.size());
  const auto& rp = a.row_ptr();
  const auto& ci = a.col_idx();
  const auto& v = a.values();
  for (int i = 0; i < a.size(); ++i)
    for (int k = rp[static_cast<std::size_t>(i)]; k < rp[static_cast<std::size_t>(i) + 1]; ++k)
      d(i, ci[static_cast<std::size_t>(k)]) += v[static_cast<std::size_t>(k)];
  return d;
}

// Largest |A - B| entry divided by the largest |B| entry (matrix-scale
// relative error; B is the reference).
inline double matrix_rel_error(const meshgrad::DenseMatrix& a,
                               const meshgrad::DenseMatrix& b) {
  double diff = 0.0, scale = 0.0;
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      diff = std::max(diff, std::abs(a(i, j) - b(i, j)));
      scale = std::max(scale, std::abs(b(i, j)));
    }
  return scale > 0.0 ? diff / scale : diff;
}

// ---- dense solve in extended precision (for the 1-D basis oracle) ----

inline std::vector<long double> solve_dense_ld(
    std::vector<std::vector<long double>> a, std::vector<long double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    if (a[col][col] == 0.0L) throw std::runtime_error("singular oracle system");
    for (std::size_t r = col + 1; r < n; ++r) {
      const long double m = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
      b[r] -= m * b[col];
    }
  }
  std::vector<long double> x(n, 0.0L);
  for (std::size_t i = n; i-- > 0;) {
    long double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

// ---- independent local mass-matrix oracles ----

// Interval of length h, equally spaced Lagrange nodes j/order on the
// reference interval [0,1]. Basis polynomials are recovered by solving a
// Vandermonde system in long double; entries are then exact monomial
// integrals   M[i][j] = h * sum_{a,b} c_i[a] c_j[b] / (a + b + 1).
inline meshgrad::DenseMatrix mass_oracle_interval(double h, int order) {
  const int n = order + 1;
  std::vector<std::vector<long double>> coeffs;
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<long double>> vand(
        static_cast<std::size_t>(n), std::vector<long double>(static_cast<std::size_t>(n)));
    for (int r = 0; r < n; ++r) {
      const long double x = static_cast<long double>(r) / order;
      long double p = 1.0L;
      for (int c = 0; c < n; ++c) {
        vand[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = p;
        p *= x;
      }
    }
    std::vector<long double> rhs(static_cast<std::size_t>(n), 0.0L);
    rhs[static_cast<std::size_t>(i)] = 1.0L;
    coeffs.push_back(solve_dense_ld(std::move(vand), std::move(rhs)));
  }
  meshgrad::DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long double s = 0.0L;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          s += coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] *
               coeffs[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)] /
               (a + b + 1);
      m(i, j) = static_cast<double>(s * h);
    }
  return m;
}

// Linear simplex (triangle or tetrahedron) given by its physical vertices.
// Barycentric basis functions under a hand-coded degree-2 rule on the
// reference simplex, scaled by |det J| computed from the vertex coordinates.
inline meshgrad::DenseMatrix mass_oracle_simplex(
    const std::vector<std::array<double, 3>>& verts) {
  const int nv = static_cast<int>(verts.size());
  std::vector<std::array<double, 3>> pts;  // reference coordinates
  std::vector<double> wts;                 // include the reference measure
  double det_abs = 0.0;
  if (nv == 3) {
    const double ax = verts[1][0] - verts[0][0], ay = verts[1][1] - verts[0][1];
    const double bx = verts[2][0] - verts[0][0], by = verts[2][1] - verts[0][1];
    det_abs = std::abs(ax * by - ay * bx);
    pts = {{0.5, 0.0, 0.0}, {0.5, 0.5, 0.0}, {0.0, 0.5, 0.0}};
    wts = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
  } else if (nv == 4) {
    double e[3][3];
    for (int c = 0; c < 3; ++c)
      for (int r = 0; r < 3; ++r) e[r][c] = verts[static_cast<std::size_t>(c) + 1][static_cast<std::size_t>(r)] - verts[0][static_cast<std::size_t>(r)];
    det_abs = std::abs(e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) -
                       e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
                       e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]));
    const double a = (5.0 + 3.0 * std::sqrt(5.0)) / 20.0;
    const double b = (5.0 - std::sqrt(5.0)) / 20.0;
    pts = {{a, b, b}, {b, a, b}, {b, b, a}, {b, b, b}};
    // barycentric (l1,..,l4) with l1 = 1-x-y-z: the fourth point puts the
    // large coordinate on l1.
    wts = {1.0 / 24.0, 1.0 / 24.0, 1.0 / 24.0, 1.0 / 24.0};
  } else {
    throw std::runtime_error("mass_oracle_simplex: need 3 or 4 vertices");
  }

  meshgrad::DenseMatrix m(nv, nv);
  for (std::size_t q = 0; q < pts.size(); ++q) {
    std::vector<double> phi(static_cast<std::size_t>(nv));
    double l0 = 1.0;
    for (int c = 0; c < nv - 1; ++c) l0 -= pts[q][static_cast<std::size_t>(c)];
    phi[0] = l0;
    for (int c = 0; c < nv - 1; ++c) phi[static_cast<std::size_t>(c) + 1] = pts[q][static_cast<std::size_t>(c)];
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j)
        m(i, j) += det_abs * wts[q] * phi[static_cast<std::size_t>(i)] * phi[static_cast<std::size_t>(j)];
  }
  return m;
}

// ---- random graded meshes ----

inline std::vector<double> random_spacings(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> dist(std::log(0.05), 0.0);
  std::vector<double> s(static_cast<std::size_t>(count));
  double sum = 0.0;
  for (double& v : s) {
    v = std::exp(dist(rng));
    sum += v;
  }
  for (double& v : s) v /= sum;
  return s;
}

inline meshgrad::Mesh random_graded_mesh(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<int> coarse(2, 4);
  std::uniform_int_distribution<int> fine(4, 12);
  if (dim == 1) {
    const int n = fine(rng);
    return meshgrad::build_graded_mesh(1, {n}, random_spacings(rng, n));
  }
  if (dim == 2) {
    const int nx = coarse(rng) + 2, ny = coarse(rng);
    return meshgrad::build_graded_mesh(2, {nx, ny}, random_spacings(rng, nx));
  }
  const int nx = coarse(rng), ny = coarse(rng), nz = coarse(rng);
  return meshgrad::build_graded_mesh(3, {nx, ny, nz}, random_spacings(rng, nx));
}

// Physical vertex coordinates of one cell.
inline std::vector<std::array<double, 3>> cell_vertices(const meshgrad::Mesh& mesh,
                                                        int cell) {
  std::vector<std::array<double, 3>> verts;
  for (int l = 0; l <= mesh.dim; ++l)
    verts.push_back(
        mesh.vertices[static_cast<std::size_t>(mesh.cells[static_cast<std::size_t>(cell)][static_cast<std::size_t>(l)])]);
  return verts;
}

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace testutil
