#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "meshgrad/dense.hpp"

namespace meshgrad {

enum class CellKind { Interval, Simplex };

// Structured simplicial mesh of the unit box [0,1]^dim, dim in {1,2,3}.
// 1-D cells are intervals; 2-D squares are split into two triangles along
// the (0,0)-(1,1) diagonal; 3-D cubes into six tetrahedra sharing the main
// diagonal. The generating per-axis spacing profiles are retained so that
// refinement operations can rebuild the mesh.
struct Mesh {
  int dim = 1;
  CellKind cell_kind = CellKind::Interval;
  std::vector<std::array<double, 3>> vertices;  // coords beyond dim are 0
  std::vector<std::array<int, 4>> cells;        // dim+1 vertex ids per cell
  std::vector<std::vector<double>> axis_spacings;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int cell_count() const { return static_cast<int>(cells.size()); }
  int verts_per_cell() const { return dim + 1; }
};

// Affine map T_K(z) = J z + y from the reference cell to a physical cell.
struct ElementGeometry {
  int dim = 1;
  DenseMatrix jacobian;               // dim x dim
  std::array<double, 3> offset{};     // y
  std::array<double, 3> scalings{};   // singular values of J, descending
  double det_abs = 0.0;               // |det J|
};

// Grading / shape summary of a whole mesh.
struct MeshMetrics {
  int dim = 1;
  std::array<double, 3> h_ratio_directional{1.0, 1.0, 1.0};
  double h_ratio_product = 1.0;  // max_K prod(scalings) / min_K prod(scalings)
  double h_ratio_scalar = 1.0;   // global max scaling / global min scaling
  int p_max = 1;                 // max number of cells incident to one vertex
};

// Build a tensor-graded mesh. cells_per_axis gives the subdivision count per
// axis. If axis0_spacings is non-empty it overrides cells_per_axis[0]: the
// entries must be positive and sum to 1 within 1e-12 (InvalidGrading
// otherwise) and become the axis-0 spacing profile.
Mesh build_graded_mesh(int dim, const std::vector<int>& cells_per_axis,
                       const std::vector<double>& axis0_spacings = {});

// Halve the spacing of every interval of `axis` whose midpoint lies in
// [lo, hi) and rebuild. Throws NoCellsSelected when the window selects no
// interval.
Mesh refine_subregion(const Mesh& mesh, int axis, double lo, double hi);

// Halve every spacing on every axis; directional ratios are unchanged.
Mesh uniform_refine(const Mesh& mesh);

// Geometry of one cell. Throws SingularJacobian on degenerate cells.
ElementGeometry element_geometry(const Mesh& mesh, int cell);

MeshMetrics mesh_metrics(const Mesh& mesh);

// Plain-text dump: "dim ncells nverts cell_kind" header, vertex lines,
// then cell lines.
void write_mesh_text(std::ostream& os, const Mesh& mesh);
void write_mesh_text_file(const std::string& path, const Mesh& mesh);

}  // namespace meshgrad
