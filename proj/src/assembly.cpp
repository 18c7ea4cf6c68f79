#include "meshgrad/assembly.hpp"

#include "meshgrad/errors.hpp"
#include "meshgrad/spectra.hpp"

namespace meshgrad {

namespace {

enum class Operator { Mass, Stiffness, MassPlusStiffness };

SparseMatrix assemble(const FunctionSpace& space, Operator op) {
  const int d = space.mesh.dim;
  const ReferenceElement& el = space.element;
  const int p = el.node_count;

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(space.mesh.cell_count()) * p * p *
                   (op == Operator::MassPlusStiffness ? 2 : 1));

  for (int c = 0; c < space.mesh.cell_count(); ++c) {
    const ElementGeometry geo = element_geometry(space.mesh, c);
    const std::vector<int>& dofs = space.cell_dofs[static_cast<std::size_t>(c)];

    if (op != Operator::Stiffness) {
      // Affine cells: the local mass block is |det J| * mass_hat exactly.
      for (int l = 0; l < p; ++l)
        for (int m = 0; m < p; ++m)
          triplets.push_back({dofs[static_cast<std::size_t>(l)], dofs[static_cast<std::size_t>(m)],
                              geo.det_abs * el.mass_hat(l, m)});
    }
    if (op != Operator::Mass) {
      // K_local = |det J| * sum_ab (J^-1 J^-T)_ab * stiff_hat[a][b]
      const DenseMatrix inv = inverse_small(geo.jacobian);
      DenseMatrix cmat(d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          double s = 0.0;
          for (int k = 0; k < d; ++k) s += inv(a, k) * inv(b, k);
          cmat(a, b) = s;
        }
      for (int l = 0; l < p; ++l)
        for (int m = 0; m < p; ++m) {
          double s = 0.0;
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
              s += cmat(a, b) * el.stiff_hat[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)](l, m);
          triplets.push_back({dofs[static_cast<std::size_t>(l)], dofs[static_cast<std::size_t>(m)],
                              geo.det_abs * s});
        }
    }
  }
  return SparseMatrix::from_triplets(space.dof_count, std::move(triplets));
}

}  // namespace

SparseMatrix assemble_mass(const FunctionSpace& space) {
  return assemble(space, Operator::Mass);
}

SparseMatrix assemble_stiffness(const FunctionSpace& space) {
  return assemble(space, Operator::Stiffness);
}

SparseMatrix assemble_gram(const FunctionSpace& space, InnerProduct ip) {
  switch (ip) {
    case InnerProduct::L2Mass:
      return assemble(space, Operator::Mass);
    case InnerProduct::H1Full:
      return assemble(space, Operator::MassPlusStiffness);
    case InnerProduct::Euclidean:
      break;
  }
  throw GramIsIdentity("assemble_gram: the euclidean Gram matrix is the identity");
}

std::vector<double> riesz_map(const SparseMatrix& gram, const std::vector<double>& dual,
                              double tol) {
  const int n = gram.size();
  // Finite termination at n steps holds only in exact arithmetic; strongly
  // graded Gram matrices need a rounding-aware budget at tight tolerances.
  const int max_iter = std::max(50 * n, 10000);
  try {
    return cg_solve(gram, dual, tol, max_iter);
  } catch (const MaxIterExceeded& e) {
    throw RieszSolveFailed(std::string("riesz_map: ") + e.what());
  }
}

}  // namespace meshgrad
