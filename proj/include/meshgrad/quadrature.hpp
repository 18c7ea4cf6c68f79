#pragma once

#include <array>
#include <vector>

namespace meshgrad {

// Quadrature rule on a reference cell. Points carry up to three coordinates;
// entries beyond the cell dimension are zero.
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

// Gauss-Legendre rule with npts points mapped to [0,1]; exact for
// polynomials of degree 2*npts - 1. Supported npts: 1..8.
QuadratureRule gauss_legendre_01(int npts);

// Symmetric rules on the reference triangle {x,y >= 0, x+y <= 1}.
// degree 2: 3-point edge-midpoint rule; degree 4: 6-point rule.
QuadratureRule triangle_rule(int degree);

// Degree-2 4-point rule on the reference tetrahedron.
QuadratureRule tetrahedron_rule(int degree);

}  // namespace meshgrad
