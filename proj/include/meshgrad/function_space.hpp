#pragma once

#include <array>
#include <vector>

#include "meshgrad/mesh.hpp"
#include "meshgrad/reference_element.hpp"

namespace meshgrad {

// Continuous Lagrange space on a Mesh. DOFs shared across cell boundaries
// carry one global index; coefficients are nodal values.
struct FunctionSpace {
  Mesh mesh;
  ReferenceElement element;
  int dof_count = 0;
  std::vector<std::vector<int>> cell_dofs;        // per cell, local -> global
  std::vector<std::array<double, 3>> dof_coords;  // nodal coordinates
};

FunctionSpace make_function_space(const Mesh& mesh, int order);

// Coefficient vector of the constant function `value`.
std::vector<double> interpolate_constant(const FunctionSpace& space, double value);

// Nodal interpolant of an arbitrary function of position.
template <class F>
std::vector<double> interpolate(const FunctionSpace& space, F&& f) {
  std::vector<double> u(space.dof_count);
  for (int i = 0; i < space.dof_count; ++i) u[i] = f(space.dof_coords[i]);
  return u;
}

}  // namespace meshgrad
