#include "meshgrad/function_space.hpp"

#include "meshgrad/errors.hpp"

namespace meshgrad {

FunctionSpace make_function_space(const Mesh& mesh, int order) {
  FunctionSpace space;
  space.element = reference_element(mesh.dim, order);
  space.mesh = mesh;

  const int d = mesh.dim;
  if (d == 1) {
    // Vertex DOFs first, then order-1 interior DOFs per cell.
    const int nv = mesh.vertex_count();
    space.dof_count = nv + (order - 1) * mesh.cell_count();
    space.dof_coords.resize(static_cast<std::size_t>(space.dof_count));
    for (int v = 0; v < nv; ++v) space.dof_coords[static_cast<std::size_t>(v)] = mesh.vertices[static_cast<std::size_t>(v)];
    space.cell_dofs.resize(static_cast<std::size_t>(mesh.cell_count()));
    for (int c = 0; c < mesh.cell_count(); ++c) {
      const int v0 = mesh.cells[static_cast<std::size_t>(c)][0];
      const int v1 = mesh.cells[static_cast<std::size_t>(c)][1];
      const double x0 = mesh.vertices[static_cast<std::size_t>(v0)][0];
      const double x1 = mesh.vertices[static_cast<std::size_t>(v1)][0];
      std::vector<int>& dofs = space.cell_dofs[static_cast<std::size_t>(c)];
      dofs.resize(static_cast<std::size_t>(order) + 1);
      dofs[0] = v0;
      dofs[static_cast<std::size_t>(order)] = v1;
      for (int j = 1; j < order; ++j) {
        const int id = nv + c * (order - 1) + (j - 1);
        dofs[static_cast<std::size_t>(j)] = id;
        const double t = static_cast<double>(j) / order;
        space.dof_coords[static_cast<std::size_t>(id)] = {x0 + t * (x1 - x0), 0.0, 0.0};
      }
    }
    return space;
  }

  // Simplex order 1: DOFs are the mesh vertices.
  space.dof_count = mesh.vertex_count();
  space.dof_coords = mesh.vertices;
  space.cell_dofs.resize(static_cast<std::size_t>(mesh.cell_count()));
  for (int c = 0; c < mesh.cell_count(); ++c) {
    std::vector<int>& dofs = space.cell_dofs[static_cast<std::size_t>(c)];
    dofs.resize(static_cast<std::size_t>(d) + 1);
    for (int l = 0; l <= d; ++l) dofs[static_cast<std::size_t>(l)] = mesh.cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(l)];
  }
  return space;
}

std::vector<double> interpolate_constant(const FunctionSpace& space, double value) {
  return std::vector<double>(static_cast<std::size_t>(space.dof_count), value);
}

}  // namespace meshgrad
