#pragma once

#include <array>
#include <functional>
#include <vector>

#include "meshgrad/assembly.hpp"
#include "meshgrad/descent.hpp"
#include "meshgrad/function_space.hpp"
#include "meshgrad/sparse.hpp"
#include "meshgrad/spectra.hpp"

namespace meshgrad {

// Distributed control of the Poisson equation on the unit square:
//   min over f of 1/2 ||u - d||^2_L2 + alpha/2 ||f||^2_H
//   subject to the discrete state system stiffness_bc * u = -(mass * f)
// with homogeneous Dirichlet values on the boundary. The control space H is
// either L2 (gram = mass) or full H1 (gram = mass + stiffness, no BCs).
struct PoissonControlProblem {
  FunctionSpace space;
  SparseMatrix mass;
  SparseMatrix stiffness;     // no boundary conditions (used by the H1 gram)
  SparseMatrix stiffness_bc;  // Dirichlet rows/columns eliminated
  SparseMatrix gram_control;  // Gram matrix of H
  std::vector<char> is_boundary;
  std::vector<double> desired;   // coefficients of d
  double tikhonov_alpha = 1e-6;
  InnerProduct control_space = InnerProduct::L2Mass;
  double solver_tol = 1e-12;     // CG tolerance of the iterative fallback

  // Direct factorization of stiffness_bc under a coordinate-sorted dof
  // ordering (tensor meshes have small bandwidth there). State and adjoint
  // solves use it when valid and fall back to preconditioned CG otherwise.
  BandedCholesky stiffness_factor;

  // Warm starts carried across consecutive iterative solves on the same
  // problem. Successive optimizer iterates differ little, so restarting PCG
  // from the previous solution saves most of its iterations late in a run.
  mutable std::vector<double> state_warm;
  mutable std::vector<double> adjoint_warm;
};

PoissonControlProblem make_poisson_problem(
    const Mesh& mesh, InnerProduct control_space, double tikhonov_alpha,
    const std::function<double(const std::array<double, 3>&)>& desired);

// State solve: stiffness_bc * u = -(mass * f) with boundary entries zeroed.
// Throws StateSolveFailed when CG fails.
std::vector<double> solve_state(const PoissonControlProblem& prob,
                                const std::vector<double>& f);

// Adjoint solve: stiffness_bc * lambda = mass * (u - d) with boundary
// entries zeroed. Throws AdjointSolveFailed when CG fails.
std::vector<double> solve_adjoint(const PoissonControlProblem& prob,
                                  const std::vector<double>& u);

// Reduced functional J(f).
double reduced_eval(const PoissonControlProblem& prob, const std::vector<double>& f);

// Dual vector g with dJ(f)[df] = <g, df>_l2 for every direction df:
//   g = -(mass * lambda) + tikhonov_alpha * gram_control * f.
std::vector<double> reduced_gradient_dual(const PoissonControlProblem& prob,
                                          const std::vector<double>& f);

struct LbfgsConfig {
  InnerProduct gradient_representation = InnerProduct::Euclidean;
  int memory = 10;
  double grad_tol = 1e-7;     // on ||R_H(J')||_H (euclidean: l2 of the dual)
  int max_iter = 5000;
  double armijo_c1 = 1e-4;
  double backtrack_shrink = 0.5;
  double initial_step = 1.0;
  double riesz_tol = 1e-10;   // CG tolerance of the gradient Riesz solves
  double curvature_skip = 1e-14;
};

// Limited-memory BFGS with the two-loop recursion over the inner product
// selected by cfg.gradient_representation: Euclidean uses raw coefficient
// dots on dual gradients; otherwise gradients are Riesz-mapped through the
// problem's control Gram matrix and all dots are Gram-weighted. Trace
// f_values are J, alpha the accepted step, grad_norm the stopping norm.
OptTrace lbfgs_minimize(const PoissonControlProblem& prob, const LbfgsConfig& cfg,
                        std::vector<double>* final_control = nullptr);

// Observed Taylor remainder order of J at f along delta over the step
// sequence `steps`: slope of log |J(f + t delta) - J(f) - t <g, delta>|
// against log t. gradient_override replaces g (diagnostics).
double taylor_test(const PoissonControlProblem& prob, const std::vector<double>& f,
                   const std::vector<double>& delta, const std::vector<double>& steps,
                   const std::vector<double>* gradient_override = nullptr);

}  // namespace meshgrad
