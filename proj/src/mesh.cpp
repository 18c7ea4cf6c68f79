#include "meshgrad/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>

#include "meshgrad/errors.hpp"

namespace meshgrad {

namespace {

std::vector<double> prefix_coords(const std::vector<double>& spacings) {
  std::vector<double> x(spacings.size() + 1, 0.0);
  for (std::size_t i = 0; i < spacings.size(); ++i) x[i + 1] = x[i] + spacings[i];
  x.back() = 1.0;  // pin the far end exactly
  return x;
}

// Rebuild the full mesh from per-axis spacing profiles.
Mesh build_from_spacings(int dim, std::vector<std::vector<double>> spacings) {
  Mesh m;
  m.dim = dim;
  m.cell_kind = dim == 1 ? CellKind::Interval : CellKind::Simplex;
  m.axis_spacings = std::move(spacings);

  std::vector<std::vector<double>> coords(dim);
  std::array<int, 3> nv{1, 1, 1};
  for (int ax = 0; ax < dim; ++ax) {
    coords[ax] = prefix_coords(m.axis_spacings[ax]);
    nv[ax] = static_cast<int>(coords[ax].size());
  }

  auto vid = [&](int i, int j, int k) { return (k * nv[1] + j) * nv[0] + i; };

  m.vertices.reserve(static_cast<std::size_t>(nv[0]) * nv[1] * nv[2]);
  for (int k = 0; k < nv[2]; ++k)
    for (int j = 0; j < nv[1]; ++j)
      for (int i = 0; i < nv[0]; ++i)
        m.vertices.push_back({coords[0][i], dim > 1 ? coords[1][j] : 0.0,
                              dim > 2 ? coords[2][k] : 0.0});

  if (dim == 1) {
    for (int i = 0; i + 1 < nv[0]; ++i) m.cells.push_back({i, i + 1, -1, -1});
    return m;
  }

  if (dim == 2) {
    for (int j = 0; j + 1 < nv[1]; ++j) {
      for (int i = 0; i + 1 < nv[0]; ++i) {
        const int v00 = vid(i, j, 0), v10 = vid(i + 1, j, 0);
        const int v01 = vid(i, j + 1, 0), v11 = vid(i + 1, j + 1, 0);
        // Split along the v00-v11 diagonal; the right-angle vertex is listed
        // first so the Jacobian's singular values are the two leg lengths.
        m.cells.push_back({v10, v11, v00, -1});
        m.cells.push_back({v01, v00, v11, -1});
      }
    }
    return m;
  }

  // dim == 3: six tetrahedra per cube, all sharing the main diagonal from
  // corner (0,0,0) to corner (1,1,1), one per axis permutation.
  static const int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int k = 0; k + 1 < nv[2]; ++k) {
    for (int j = 0; j + 1 < nv[1]; ++j) {
      for (int i = 0; i + 1 < nv[0]; ++i) {
        for (auto& perm : kPerms) {
          std::array<int, 3> at{i, j, k};
          std::array<int, 4> tet{};
          tet[0] = vid(at[0], at[1], at[2]);
          for (int step = 0; step < 3; ++step) {
            at[perm[step]] += 1;
            tet[step + 1] = vid(at[0], at[1], at[2]);
          }
          // Normalise to positive orientation.
          const auto& a = m.vertices[tet[0]];
          const auto& b = m.vertices[tet[1]];
          const auto& c = m.vertices[tet[2]];
          const auto& d = m.vertices[tet[3]];
          const double e1[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
          const double e2[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
          const double e3[3] = {d[0] - a[0], d[1] - a[1], d[2] - a[2]};
          const double det = e1[0] * (e2[1] * e3[2] - e2[2] * e3[1]) -
                             e1[1] * (e2[0] * e3[2] - e2[2] * e3[0]) +
                             e1[2] * (e2[0] * e3[1] - e2[1] * e3[0]);
          if (det < 0.0) std::swap(tet[2], tet[3]);
          m.cells.push_back(tet);
        }
      }
    }
  }
  return m;
}

}  // namespace

Mesh build_graded_mesh(int dim, const std::vector<int>& cells_per_axis,
                       const std::vector<double>& axis0_spacings) {
  if (dim < 1 || dim > 3) throw InvalidGrading("build_graded_mesh: dim must be 1, 2 or 3");
  if (static_cast<int>(cells_per_axis.size()) != dim)
    throw InvalidGrading("build_graded_mesh: cells_per_axis size must equal dim");

  std::vector<std::vector<double>> spacings(dim);
  for (int ax = 0; ax < dim; ++ax) {
    if (ax == 0 && !axis0_spacings.empty()) {
      double sum = 0.0;
      for (double s : axis0_spacings) {
        if (!(s > 0.0)) throw InvalidGrading("build_graded_mesh: spacings must be positive");
        sum += s;
      }
      if (std::abs(sum - 1.0) > 1e-12)
        throw InvalidGrading("build_graded_mesh: spacings must sum to 1");
      spacings[0] = axis0_spacings;
    } else {
      const int n = cells_per_axis[ax];
      if (n < 1) throw InvalidGrading("build_graded_mesh: cells_per_axis must be >= 1");
      spacings[ax].assign(n, 1.0 / n);
    }
  }
  return build_from_spacings(dim, std::move(spacings));
}

Mesh refine_subregion(const Mesh& mesh, int axis, double lo, double hi) {
  if (axis < 0 || axis >= mesh.dim)
    throw InvalidGrading("refine_subregion: axis out of range");
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0))
    throw InvalidGrading("refine_subregion: require 0 <= lo < hi <= 1");

  std::vector<std::vector<double>> spacings = mesh.axis_spacings;
  const std::vector<double>& old_axis = mesh.axis_spacings[static_cast<std::size_t>(axis)];
  std::vector<double> refined;
  refined.reserve(old_axis.size() * 2);
  double x = 0.0;
  int selected = 0;
  for (double s : old_axis) {
    const double mid = x + 0.5 * s;
    if (mid >= lo && mid < hi) {
      refined.push_back(0.5 * s);
      refined.push_back(0.5 * s);
      ++selected;
    } else {
      refined.push_back(s);
    }
    x += s;
  }
  if (selected == 0) throw NoCellsSelected("refine_subregion: window selects no cells");
  spacings[static_cast<std::size_t>(axis)] = std::move(refined);
  return build_from_spacings(mesh.dim, std::move(spacings));
}

Mesh uniform_refine(const Mesh& mesh) {
  std::vector<std::vector<double>> spacings(mesh.axis_spacings.size());
  for (std::size_t ax = 0; ax < spacings.size(); ++ax) {
    spacings[ax].reserve(mesh.axis_spacings[ax].size() * 2);
    for (double s : mesh.axis_spacings[ax]) {
      spacings[ax].push_back(0.5 * s);
      spacings[ax].push_back(0.5 * s);
    }
  }
  return build_from_spacings(mesh.dim, std::move(spacings));
}

ElementGeometry element_geometry(const Mesh& mesh, int cell) {
  if (cell < 0 || cell >= mesh.cell_count())
    throw InvalidGrading("element_geometry: cell index out of range");
  const int d = mesh.dim;
  const auto& ids = mesh.cells[static_cast<std::size_t>(cell)];

  ElementGeometry geo;
  geo.dim = d;
  geo.jacobian = DenseMatrix(d, d);
  const auto& p0 = mesh.vertices[static_cast<std::size_t>(ids[0])];
  for (int c = 0; c < d; ++c) {
    const auto& pc = mesh.vertices[static_cast<std::size_t>(ids[c + 1])];
    for (int r = 0; r < d; ++r) geo.jacobian(r, c) = pc[r] - p0[r];
  }
  for (int r = 0; r < 3; ++r) geo.offset[r] = p0[r];

  const double det = det_small(geo.jacobian);
  geo.det_abs = std::abs(det);

  const std::vector<double> sv = singular_values(geo.jacobian);
  for (int i = 0; i < d; ++i) geo.scalings[static_cast<std::size_t>(i)] = sv[static_cast<std::size_t>(i)];

  if (!(geo.det_abs > 0.0) || sv.back() <= 1e-14 * sv.front())
    throw SingularJacobian("element_geometry: degenerate cell");
  return geo;
}

MeshMetrics mesh_metrics(const Mesh& mesh) {
  MeshMetrics metrics;
  metrics.dim = mesh.dim;
  const int d = mesh.dim;

  std::array<double, 3> smin{}, smax{};
  double pmin = 0.0, pmax = 0.0;
  double gmin = 0.0, gmax = 0.0;
  for (int cell = 0; cell < mesh.cell_count(); ++cell) {
    const ElementGeometry geo = element_geometry(mesh, cell);
    double prod = 1.0;
    for (int i = 0; i < d; ++i) {
      const double s = geo.scalings[static_cast<std::size_t>(i)];
      prod *= s;
      if (cell == 0) {
        smin[static_cast<std::size_t>(i)] = smax[static_cast<std::size_t>(i)] = s;
      } else {
        smin[static_cast<std::size_t>(i)] = std::min(smin[static_cast<std::size_t>(i)], s);
        smax[static_cast<std::size_t>(i)] = std::max(smax[static_cast<std::size_t>(i)], s);
      }
      if (cell == 0 && i == 0) {
        gmin = gmax = s;
      } else {
        gmin = std::min(gmin, s);
        gmax = std::max(gmax, s);
      }
    }
    if (cell == 0) {
      pmin = pmax = prod;
    } else {
      pmin = std::min(pmin, prod);
      pmax = std::max(pmax, prod);
    }
  }
  for (int i = 0; i < d; ++i)
    metrics.h_ratio_directional[static_cast<std::size_t>(i)] =
        smax[static_cast<std::size_t>(i)] / smin[static_cast<std::size_t>(i)];
  metrics.h_ratio_product = pmax / pmin;
  metrics.h_ratio_scalar = gmax / gmin;

  std::vector<int> incidence(mesh.vertices.size(), 0);
  for (const auto& cell : mesh.cells)
    for (int l = 0; l <= d; ++l) incidence[static_cast<std::size_t>(cell[static_cast<std::size_t>(l)])] += 1;
  metrics.p_max = *std::max_element(incidence.begin(), incidence.end());
  return metrics;
}

void write_mesh_text(std::ostream& os, const Mesh& mesh) {
  char buf[128];
  os << mesh.dim << ' ' << mesh.cell_count() << ' ' << mesh.vertex_count() << ' '
     << (mesh.cell_kind == CellKind::Interval ? "interval" : "simplex") << '\n';
  for (const auto& v : mesh.vertices) {
    int len = 0;
    for (int d = 0; d < mesh.dim; ++d)
      len += std::snprintf(buf + len, sizeof(buf) - static_cast<std::size_t>(len),
                           d ? " %.17g" : "%.17g", v[static_cast<std::size_t>(d)]);
    os << buf << '\n';
  }
  for (const auto& c : mesh.cells) {
    for (int l = 0; l <= mesh.dim; ++l) os << (l ? " " : "") << c[static_cast<std::size_t>(l)];
    os << '\n';
  }
}

void write_mesh_text_file(const std::string& path, const Mesh& mesh) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_mesh_text_file: cannot open " + path);
  write_mesh_text(os, mesh);
}

}  // namespace meshgrad
