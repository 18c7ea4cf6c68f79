#include "meshgrad/descent.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "meshgrad/errors.hpp"
#include "meshgrad/spectra.hpp"

namespace meshgrad {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

double objective_value(const QuadraticObjective& obj, const std::vector<double>& u) {
  if (u.size() != obj.target.size())
    throw DimensionMismatch("objective_value: iterate size mismatch");
  std::vector<double> r(obj.target.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = obj.target[i] - u[i];
  std::vector<double> gr;
  obj.gram.multiply(r, gr);
  return 0.5 * dot(r, gr);
}

std::vector<double> gradient_dual(const QuadraticObjective& obj,
                                  const std::vector<double>& u) {
  if (u.size() != obj.target.size())
    throw DimensionMismatch("gradient_dual: iterate size mismatch");
  std::vector<double> r(obj.target.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = obj.target[i] - u[i];
  std::vector<double> g;
  obj.gram.multiply(r, g);
  for (double& x : g) x = -x;
  return g;
}

std::vector<double> search_direction(const QuadraticObjective& obj,
                                     const std::vector<double>& u,
                                     InnerProduct representation, double riesz_tol,
                                     const SparseMatrix* rep_gram) {
  std::vector<double> g = gradient_dual(obj, u);
  if (representation == InnerProduct::Euclidean) {
    for (double& x : g) x = -x;
    return g;
  }
  const SparseMatrix& gram = rep_gram != nullptr ? *rep_gram : obj.gram;
  std::vector<double> d = riesz_map(gram, g, riesz_tol);
  for (double& x : d) x = -x;
  return d;
}

double exact_step(const QuadraticObjective& obj, const std::vector<double>& u,
                  const std::vector<double>& d) {
  if (norm2(d) == 0.0) throw ZeroDirection("exact_step: zero search direction");
  std::vector<double> r(obj.target.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = obj.target[i] - u[i];
  std::vector<double> gr, gd;
  obj.gram.multiply(r, gr);
  obj.gram.multiply(d, gd);
  const double curvature = dot(d, gd);
  if (curvature <= 0.0)
    throw ZeroDirection("exact_step: direction has non-positive curvature");
  return dot(d, gr) / curvature;
}

OptTrace steepest_descent(const QuadraticObjective& obj, const DescentConfig& cfg,
                          const SparseMatrix* rep_gram, const std::vector<double>* u0,
                          std::vector<double>* final_u) {
  const std::size_t n = obj.target.size();
  std::vector<double> u(n, 0.0);
  if (u0 != nullptr) {
    if (u0->size() != n) throw DimensionMismatch("steepest_descent: start size mismatch");
    u = *u0;
  }

  // Residual r = target - u and its image w = G r are updated incrementally:
  // one SpMV per iteration; periodic recomputation bounds rounding drift.
  std::vector<double> r(n), w, d, z;
  for (std::size_t i = 0; i < n; ++i) r[i] = obj.target[i] - u[i];
  obj.gram.multiply(r, w);
  double f = 0.5 * dot(r, w);

  OptTrace trace;
  trace.f_initial = f;
  if (f <= cfg.epsilon) {
    trace.converged = true;
    if (final_u != nullptr) *final_u = u;
    return trace;
  }

  const SparseMatrix& rep = rep_gram != nullptr ? *rep_gram : obj.gram;
  const int recompute_every = 256;

  for (int it = 1; it <= cfg.max_iter; ++it) {
    const double grad_norm = norm2(w);
    if (grad_norm == 0.0) {
      trace.converged = f <= cfg.epsilon;
      if (final_u != nullptr) *final_u = u;
      return trace;
    }

    if (cfg.representation == InnerProduct::Euclidean) {
      d = w;
    } else {
      d = riesz_map(rep, w, cfg.riesz_tol);
    }
    obj.gram.multiply(d, z);
    const double curvature = dot(d, z);
    if (curvature <= 0.0)
      throw ZeroDirection("steepest_descent: non-positive curvature direction");
    const double alpha = dot(d, w) / curvature;

    for (std::size_t i = 0; i < n; ++i) {
      u[i] += alpha * d[i];
      r[i] -= alpha * d[i];
      w[i] -= alpha * z[i];
    }
    if (it % recompute_every == 0) {
      for (std::size_t i = 0; i < n; ++i) r[i] = obj.target[i] - u[i];
      obj.gram.multiply(r, w);
    }
    f = 0.5 * dot(r, w);

    trace.steps.push_back(StepRecord{f, alpha, grad_norm});
    trace.iterations = it;
    if (f <= cfg.epsilon) {
      trace.converged = true;
      if (final_u != nullptr) *final_u = u;
      return trace;
    }
  }
  trace.converged = false;
  if (final_u != nullptr) *final_u = u;
  return trace;
}

bool kantorovich_contraction(const OptTrace& trace, double kappa, double slack) {
  const double rho = (kappa - 1.0) / (kappa + 1.0);
  const double factor = rho * rho;
  double prev = trace.f_initial;
  for (const StepRecord& s : trace.steps) {
    if (s.f_value > factor * prev + slack) return false;
    prev = s.f_value;
  }
  return true;
}

double iteration_estimate(const EstimateInputs& in) {
  if (!(in.epsilon > 0.0) || !(in.epsilon < in.f_initial))
    throw InvalidThreshold("iteration_estimate: need 0 < epsilon < f_initial");
  const double ratio_term =
      in.p_max * in.lambda_hat_ratio * std::pow(in.h_ratio, in.dim) + 1.0;
  return -0.25 * std::log(in.epsilon / in.f_initial) * ratio_term;
}

QuadraticObjective build_general_quadratic(const SparseMatrix& gram_H, double alpha,
                                           double beta, const std::vector<double>& v) {
  if (!(alpha > 0.0))
    throw InvalidThreshold("build_general_quadratic: alpha must be positive");
  QuadraticObjective obj;
  obj.gram = gram_H;
  obj.gram.scale(2.0 * alpha);
  if (beta == 0.0) {
    obj.target.assign(static_cast<std::size_t>(gram_H.size()), 0.0);
    return obj;
  }
  std::vector<double> rhs;
  gram_H.multiply(v, rhs);
  for (double& x : rhs) x *= -beta;
  try {
    obj.target = cg_solve(obj.gram, rhs, 1e-14,
                          std::max(50 * gram_H.size(), 10000));
  } catch (const MaxIterExceeded& e) {
    throw RieszSolveFailed(std::string("build_general_quadratic: ") + e.what());
  }
  return obj;
}

void write_trace_csv(std::ostream& os, const std::string& run_id,
                     const OptTrace& trace, bool header) {
  char buf[160];
  if (header) os << "run_id,iter,f_value,step_alpha,grad_norm_l2\n";
  std::snprintf(buf, sizeof buf, "%s,0,%.17g,0,%.17g", run_id.c_str(),
                trace.f_initial,
                trace.steps.empty() ? 0.0 : trace.steps.front().grad_norm);
  os << buf << '\n';
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const StepRecord& s = trace.steps[k];
    std::snprintf(buf, sizeof buf, "%s,%zu,%.17g,%.17g,%.17g", run_id.c_str(), k + 1,
                  s.f_value, s.alpha, s.grad_norm);
    os << buf << '\n';
  }
}

}  // namespace meshgrad
