#include "meshgrad/control.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>

#include "meshgrad/errors.hpp"
#include "meshgrad/spectra.hpp"

namespace meshgrad {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void zero_boundary(const PoissonControlProblem& prob, std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (prob.is_boundary[i]) v[i] = 0.0;
}

int solver_budget(int n) { return std::max(20 * n, 20000); }

std::vector<double> constrained_solve(const PoissonControlProblem& prob,
                                      std::vector<double> rhs,
                                      std::vector<double>* warm) {
  zero_boundary(prob, rhs);
  if (prob.stiffness_factor.valid()) return prob.stiffness_factor.solve(rhs);
  SsorPreconditioner prec(prob.stiffness_bc);
  const std::vector<double>* x0 =
      warm != nullptr && warm->size() == rhs.size() ? warm : nullptr;
  std::vector<double> x =
      pcg_solve(prob.stiffness_bc, rhs, prob.solver_tol,
                solver_budget(prob.stiffness_bc.size()), prec, x0);
  if (warm != nullptr) *warm = x;
  return x;
}

// Sorting dofs by coordinates makes tensor-product meshes banded: axes with
// many distinct values vary slowest, so graph neighbours stay within one
// short "column" of nodes and the permuted bandwidth is about the size of
// the smallest axis.
std::vector<int> coordinate_sorted_permutation(const FunctionSpace& space) {
  std::array<std::vector<double>, 3> levels;
  for (const auto& x : space.dof_coords)
    for (int c = 0; c < 3; ++c) levels[static_cast<std::size_t>(c)].push_back(x[static_cast<std::size_t>(c)]);
  std::array<int, 3> axes = {0, 1, 2};
  std::array<std::size_t, 3> counts{};
  for (int c = 0; c < 3; ++c) {
    auto& v = levels[static_cast<std::size_t>(c)];
    std::sort(v.begin(), v.end());
    counts[static_cast<std::size_t>(c)] =
        static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  }
  std::sort(axes.begin(), axes.end(), [&](int a, int b) {
    return counts[static_cast<std::size_t>(a)] > counts[static_cast<std::size_t>(b)];
  });

  std::vector<int> perm(static_cast<std::size_t>(space.dof_count));
  for (int i = 0; i < space.dof_count; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    const auto& xa = space.dof_coords[static_cast<std::size_t>(a)];
    const auto& xb = space.dof_coords[static_cast<std::size_t>(b)];
    for (int c : axes) {
      const std::size_t cc = static_cast<std::size_t>(c);
      if (xa[cc] != xb[cc]) return xa[cc] < xb[cc];
    }
    return false;
  });
  return perm;
}

}  // namespace

PoissonControlProblem make_poisson_problem(
    const Mesh& mesh, InnerProduct control_space, double tikhonov_alpha,
    const std::function<double(const std::array<double, 3>&)>& desired) {
  PoissonControlProblem prob;
  prob.space = make_function_space(mesh, 1);
  prob.mass = assemble_mass(prob.space);
  prob.stiffness = assemble_stiffness(prob.space);
  prob.gram_control = assemble_gram(prob.space, control_space);
  prob.control_space = control_space;
  prob.tikhonov_alpha = tikhonov_alpha;
  prob.desired = interpolate(prob.space, desired);

  prob.is_boundary.assign(static_cast<std::size_t>(prob.space.dof_count), 0);
  const double edge_tol = 1e-12;
  for (int i = 0; i < prob.space.dof_count; ++i) {
    const auto& x = prob.space.dof_coords[static_cast<std::size_t>(i)];
    for (int c = 0; c < mesh.dim; ++c)
      if (std::abs(x[static_cast<std::size_t>(c)]) <= edge_tol ||
          std::abs(x[static_cast<std::size_t>(c)] - 1.0) <= edge_tol)
        prob.is_boundary[static_cast<std::size_t>(i)] = 1;
  }

  prob.stiffness_bc = prob.stiffness;
  for (int i = 0; i < prob.space.dof_count; ++i)
    if (prob.is_boundary[static_cast<std::size_t>(i)])
      prob.stiffness_bc.eliminate_row_col(i, 1.0);

  prob.stiffness_factor = BandedCholesky(
      prob.stiffness_bc, coordinate_sorted_permutation(prob.space), 600);
  return prob;
}

std::vector<double> solve_state(const PoissonControlProblem& prob,
                                const std::vector<double>& f) {
  if (f.size() != static_cast<std::size_t>(prob.space.dof_count))
    throw DimensionMismatch("solve_state: control size mismatch");
  std::vector<double> rhs;
  prob.mass.multiply(f, rhs);
  for (double& x : rhs) x = -x;
  try {
    return constrained_solve(prob, std::move(rhs), &prob.state_warm);
  } catch (const MaxIterExceeded& e) {
    throw StateSolveFailed(std::string("solve_state: ") + e.what());
  }
}

std::vector<double> solve_adjoint(const PoissonControlProblem& prob,
                                  const std::vector<double>& u) {
  if (u.size() != static_cast<std::size_t>(prob.space.dof_count))
    throw DimensionMismatch("solve_adjoint: state size mismatch");
  std::vector<double> diff(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) diff[i] = u[i] - prob.desired[i];
  std::vector<double> rhs;
  prob.mass.multiply(diff, rhs);
  try {
    return constrained_solve(prob, std::move(rhs), &prob.adjoint_warm);
  } catch (const MaxIterExceeded& e) {
    throw AdjointSolveFailed(std::string("solve_adjoint: ") + e.what());
  }
}

namespace {

double functional_from_state(const PoissonControlProblem& prob,
                             const std::vector<double>& u,
                             const std::vector<double>& f) {
  std::vector<double> diff(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) diff[i] = u[i] - prob.desired[i];
  std::vector<double> mdiff;
  prob.mass.multiply(diff, mdiff);
  std::vector<double> gf;
  prob.gram_control.multiply(f, gf);
  return 0.5 * dot(diff, mdiff) + 0.5 * prob.tikhonov_alpha * dot(f, gf);
}

std::vector<double> gradient_from_state(const PoissonControlProblem& prob,
                                        const std::vector<double>& u,
                                        const std::vector<double>& f) {
  std::vector<double> lambda = solve_adjoint(prob, u);
  std::vector<double> g;
  prob.mass.multiply(lambda, g);
  std::vector<double> gf;
  prob.gram_control.multiply(f, gf);
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = -g[i] + prob.tikhonov_alpha * gf[i];
  return g;
}

}  // namespace

double reduced_eval(const PoissonControlProblem& prob, const std::vector<double>& f) {
  return functional_from_state(prob, solve_state(prob, f), f);
}

std::vector<double> reduced_gradient_dual(const PoissonControlProblem& prob,
                                          const std::vector<double>& f) {
  return gradient_from_state(prob, solve_state(prob, f), f);
}

OptTrace lbfgs_minimize(const PoissonControlProblem& prob, const LbfgsConfig& cfg,
                        std::vector<double>* final_control) {
  const std::size_t n = static_cast<std::size_t>(prob.space.dof_count);
  const bool euclid = cfg.gradient_representation == InnerProduct::Euclidean;

  // H-weighted inner product of primal vectors (raw dot in euclidean mode).
  auto ip = [&](const std::vector<double>& a, const std::vector<double>& b) {
    if (euclid) return dot(a, b);
    std::vector<double> gb;
    prob.gram_control.multiply(b, gb);
    return dot(a, gb);
  };
  // Primal gradient: the H-Riesz representer of the dual (identity in
  // euclidean mode).
  auto represent = [&](const std::vector<double>& dual) {
    if (euclid) return dual;
    return riesz_map(prob.gram_control, dual, cfg.riesz_tol);
  };

  std::vector<double> f(n, 0.0);
  std::vector<double> u = solve_state(prob, f);
  double J = functional_from_state(prob, u, f);
  std::vector<double> g = gradient_from_state(prob, u, f);
  std::vector<double> ghat = represent(g);
  // ||ghat||_H^2 = ghat^T G ghat = ghat^T g up to the Riesz tolerance.
  double grad_norm = std::sqrt(std::max(0.0, euclid ? dot(g, g) : dot(ghat, g)));

  OptTrace trace;
  trace.f_initial = J;

  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> pairs;

  for (int it = 1; it <= cfg.max_iter; ++it) {
    if (grad_norm <= cfg.grad_tol) {
      trace.converged = true;
      break;
    }

    // Two-loop recursion on the primal gradient under the chosen product.
    std::vector<double> q = ghat;
    std::vector<double> alphas(pairs.size(), 0.0);
    for (std::size_t i = pairs.size(); i-- > 0;) {
      const Pair& p = pairs[i];
      alphas[i] = p.rho * ip(p.s, q);
      for (std::size_t k = 0; k < n; ++k) q[k] -= alphas[i] * p.y[k];
    }
    if (!pairs.empty()) {
      const Pair& last = pairs.back();
      const double gamma = ip(last.s, last.y) / ip(last.y, last.y);
      for (double& x : q) x *= gamma;
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const Pair& p = pairs[i];
      const double beta = p.rho * ip(p.y, q);
      for (std::size_t k = 0; k < n; ++k) q[k] += (alphas[i] - beta) * p.s[k];
    }
    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = -q[k];

    // Directional derivative through the dual pairing; fall back to steepest
    // descent if the quasi-Newton direction fails to descend.
    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      for (std::size_t k = 0; k < n; ++k) d[k] = -ghat[k];
      slope = dot(g, d);
      if (!(slope < 0.0)) {
        trace.converged = grad_norm <= cfg.grad_tol;
        break;
      }
    }

    double t = cfg.initial_step;
    double J_new = 0.0;
    std::vector<double> f_new(n), u_new;
    bool accepted = false;
    while (t > 1e-14) {
      for (std::size_t k = 0; k < n; ++k) f_new[k] = f[k] + t * d[k];
      u_new = solve_state(prob, f_new);
      J_new = functional_from_state(prob, u_new, f_new);
      if (J_new <= J + cfg.armijo_c1 * t * slope) {
        accepted = true;
        break;
      }
      t *= cfg.backtrack_shrink;
    }
    if (!accepted) break;

    std::vector<double> g_new = gradient_from_state(prob, u_new, f_new);
    std::vector<double> ghat_new = represent(g_new);

    Pair p;
    p.s.resize(n);
    p.y.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      p.s[k] = f_new[k] - f[k];
      p.y[k] = ghat_new[k] - ghat[k];
    }
    const double sy = ip(p.s, p.y);
    const double ss = std::sqrt(std::max(0.0, ip(p.s, p.s)));
    const double yy = std::sqrt(std::max(0.0, ip(p.y, p.y)));
    if (sy > cfg.curvature_skip * ss * yy) {
      p.rho = 1.0 / sy;
      pairs.push_back(std::move(p));
      if (static_cast<int>(pairs.size()) > cfg.memory) pairs.pop_front();
    }

    f.swap(f_new);
    J = J_new;
    g.swap(g_new);
    ghat.swap(ghat_new);
    const double gn_before = grad_norm;
    grad_norm = std::sqrt(std::max(0.0, euclid ? dot(g, g) : dot(ghat, g)));
    trace.steps.push_back(StepRecord{J, t, gn_before});
    trace.iterations = it;
    if (grad_norm <= cfg.grad_tol) {
      trace.converged = true;
      break;
    }
  }

  if (final_control != nullptr) *final_control = f;
  return trace;
}

double taylor_test(const PoissonControlProblem& prob, const std::vector<double>& f,
                   const std::vector<double>& delta, const std::vector<double>& steps,
                   const std::vector<double>* gradient_override) {
  if (delta.size() != f.size() || steps.size() < 2)
    throw DimensionMismatch("taylor_test: bad perturbation or step list");
  const double J0 = reduced_eval(prob, f);
  const std::vector<double> g =
      gradient_override != nullptr ? *gradient_override : reduced_gradient_dual(prob, f);
  const double gd = dot(g, delta);

  std::vector<double> xs, ys;
  std::vector<double> probe(f.size());
  for (double t : steps) {
    for (std::size_t i = 0; i < f.size(); ++i) probe[i] = f[i] + t * delta[i];
    const double rem = std::abs(reduced_eval(prob, probe) - J0 - t * gd);
    xs.push_back(std::log(t));
    ys.push_back(std::log(std::max(rem, 1e-300)));
  }

  // Least-squares slope of log remainder against log step.
  const double m = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace meshgrad
