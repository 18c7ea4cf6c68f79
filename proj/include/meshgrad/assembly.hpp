#pragma once

#include <vector>

#include "meshgrad/function_space.hpp"
#include "meshgrad/sparse.hpp"

namespace meshgrad {

// Inner product used to represent functional derivatives.
enum class InnerProduct { Euclidean, L2Mass, H1Full };

// Global mass matrix. Every local block is |det J_K| * mass_hat, which is
// exact for affine simplicial cells.
SparseMatrix assemble_mass(const FunctionSpace& space);

// Global stiffness matrix (homogeneous Neumann pattern; no BCs applied).
SparseMatrix assemble_stiffness(const FunctionSpace& space);

// Gram matrix of the requested inner product: L2Mass -> mass,
// H1Full -> mass + stiffness. Euclidean throws GramIsIdentity: the identity
// needs no solve and callers must branch instead of paying for one.
SparseMatrix assemble_gram(const FunctionSpace& space, InnerProduct ip);

// Solve gram * x = dual by unpreconditioned CG to a relative residual of
// `tol`. Throws RieszSolveFailed when CG stagnates.
std::vector<double> riesz_map(const SparseMatrix& gram,
                              const std::vector<double>& dual, double tol);

}  // namespace meshgrad
