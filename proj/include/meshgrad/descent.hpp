#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "meshgrad/assembly.hpp"
#include "meshgrad/sparse.hpp"

namespace meshgrad {

// f(u) = 1/2 (target - u)^T gram (target - u); the minimum value is 0 at
// u = target.
struct QuadraticObjective {
  SparseMatrix gram;
  std::vector<double> target;
};

struct DescentConfig {
  InnerProduct representation = InnerProduct::Euclidean;
  double epsilon = 1e-15;   // stop when f(u) <= epsilon (absolute)
  int max_iter = 2000000;
  double riesz_tol = 1e-14; // CG tolerance for represented directions
};

struct StepRecord {
  double f_value = 0.0;      // functional value after the step
  double alpha = 0.0;        // exact line-search step
  double grad_norm = 0.0;    // l2 norm of the gradient dual before the step
};

struct OptTrace {
  int iterations = 0;
  bool converged = false;
  double f_initial = 0.0;
  std::vector<StepRecord> steps;
};

// Inputs of the analytic iteration estimate.
struct EstimateInputs {
  double epsilon = 1e-15;
  double f_initial = 0.5;
  int p_max = 2;
  double lambda_hat_ratio = 3.0;
  double h_ratio = 1.0;
  int dim = 1;
};

double objective_value(const QuadraticObjective& obj, const std::vector<double>& u);

// dual of f'(u): -gram (target - u).
std::vector<double> gradient_dual(const QuadraticObjective& obj,
                                  const std::vector<double>& u);

// Steepest-descent direction under the chosen representation:
//   Euclidean: -gradient_dual;  otherwise -riesz_map(rep_gram, gradient_dual).
// rep_gram = nullptr uses obj.gram as the representing Gram matrix (the
// natural choice when the objective's own inner product is the space's).
std::vector<double> search_direction(const QuadraticObjective& obj,
                                     const std::vector<double>& u,
                                     InnerProduct representation, double riesz_tol,
                                     const SparseMatrix* rep_gram = nullptr);

// Exact line search for the quadratic: alpha = d^T gram r / d^T gram d with
// r = target - u. Throws ZeroDirection on a zero direction.
double exact_step(const QuadraticObjective& obj, const std::vector<double>& u,
                  const std::vector<double>& d);

// Steepest descent with exact line search from u0 (default: zero vector).
// Stops when f <= cfg.epsilon (converged) or cfg.max_iter is hit
// (converged = false). A zero gradient at the start yields a converged
// zero-iteration trace. If final_u is non-null it receives the last iterate.
OptTrace steepest_descent(const QuadraticObjective& obj, const DescentConfig& cfg,
                          const SparseMatrix* rep_gram = nullptr,
                          const std::vector<double>* u0 = nullptr,
                          std::vector<double>* final_u = nullptr);

// Check f_k <= ((kappa-1)/(kappa+1))^2 * f_{k-1} + slack for all consecutive
// pairs of the trace (minimum value 0).
bool kantorovich_contraction(const OptTrace& trace, double kappa,
                             double slack = 1e-10);

// Analytic iteration estimate
//   -1/4 * ln(epsilon / f_initial) * (p_max * lambda_hat_ratio * h_ratio^dim + 1).
// Throws InvalidThreshold unless 0 < epsilon < f_initial.
double iteration_estimate(const EstimateInputs& in);

// Objective for min_u alpha <u,u>_H + beta <u,v>_H (+ constant):
// gram = 2 * alpha * gram_H and target solves gram * target = -beta * gram_H v.
// alpha must be positive; beta = 0 gives target = 0.
QuadraticObjective build_general_quadratic(const SparseMatrix& gram_H, double alpha,
                                           double beta, const std::vector<double>& v);

// CSV rows "run_id,iter,f_value,step_alpha,grad_norm_l2"; iter 0 carries the
// initial functional value.
void write_trace_csv(std::ostream& os, const std::string& run_id,
                     const OptTrace& trace, bool header = true);

}  // namespace meshgrad
