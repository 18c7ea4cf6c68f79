#pragma once

#include <array>
#include <vector>

#include "meshgrad/dense.hpp"

namespace meshgrad {

// Reference-cell data for equally spaced Lagrange elements:
//   1-D: orders 1..5 on [0,1];  2-D / 3-D: order 1 on the unit simplex.
// mass_hat is the reference mass matrix; stiff_hat[a][b] holds
// integrals of d_a(psi_l) * d_b(psi_m) over the reference cell so that the
// physical stiffness block is |det J| * sum_ab (J^-1 J^-T)_ab stiff_hat[a][b].
struct ReferenceElement {
  int dim = 1;
  int order = 1;
  int node_count = 2;
  std::vector<std::array<double, 3>> nodes;
  DenseMatrix mass_hat;
  std::array<std::array<DenseMatrix, 3>, 3> stiff_hat;
  double lambda_hat_min = 0.0;  // extreme eigenvalues of mass_hat
  double lambda_hat_max = 0.0;
  double volume = 1.0;          // reference cell volume
};

// Throws UnsupportedElement for any (dim, order) outside the table above.
ReferenceElement reference_element(int dim, int order);

}  // namespace meshgrad
