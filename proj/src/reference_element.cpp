#include "meshgrad/reference_element.hpp"

#include <cmath>

#include "meshgrad/errors.hpp"
#include "meshgrad/quadrature.hpp"

namespace meshgrad {

namespace {

// 1-D Lagrange basis on equally spaced nodes j/k, j = 0..k.
double lagrange_value(int order, int j, double x) {
  double v = 1.0;
  const double xj = static_cast<double>(j) / order;
  for (int m = 0; m <= order; ++m) {
    if (m == j) continue;
    const double xm = static_cast<double>(m) / order;
    v *= (x - xm) / (xj - xm);
  }
  return v;
}

double lagrange_derivative(int order, int j, double x) {
  const double xj = static_cast<double>(j) / order;
  double sum = 0.0;
  for (int l = 0; l <= order; ++l) {
    if (l == j) continue;
    const double xl = static_cast<double>(l) / order;
    double term = 1.0 / (xj - xl);
    for (int m = 0; m <= order; ++m) {
      if (m == j || m == l) continue;
      const double xm = static_cast<double>(m) / order;
      term *= (x - xm) / (xj - xm);
    }
    sum += term;
  }
  return sum;
}

ReferenceElement line_element(int order) {
  ReferenceElement el;
  el.dim = 1;
  el.order = order;
  el.node_count = order + 1;
  el.volume = 1.0;
  for (int j = 0; j <= order; ++j)
    el.nodes.push_back({static_cast<double>(j) / order, 0.0, 0.0});

  const QuadratureRule rule = gauss_legendre_01(order + 1);
  const int p = el.node_count;
  el.mass_hat = DenseMatrix(p, p);
  el.stiff_hat[0][0] = DenseMatrix(p, p);
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const double x = rule.points[q][0], w = rule.weights[q];
    for (int l = 0; l < p; ++l) {
      const double vl = lagrange_value(order, l, x);
      const double dl = lagrange_derivative(order, l, x);
      for (int m = 0; m < p; ++m) {
        el.mass_hat(l, m) += w * vl * lagrange_value(order, m, x);
        el.stiff_hat[0][0](l, m) += w * dl * lagrange_derivative(order, m, x);
      }
    }
  }
  return el;
}

ReferenceElement simplex_element(int dim) {
  ReferenceElement el;
  el.dim = dim;
  el.order = 1;
  el.node_count = dim + 1;
  el.volume = dim == 2 ? 0.5 : 1.0 / 6.0;

  el.nodes.push_back({0.0, 0.0, 0.0});
  for (int d = 0; d < dim; ++d) {
    std::array<double, 3> n{};
    n[static_cast<std::size_t>(d)] = 1.0;
    el.nodes.push_back(n);
  }

  // Linear barycentric basis: psi_0 = 1 - sum(x), psi_{d+1} = x_d.
  // Gradients are constant.
  const int p = el.node_count;
  std::vector<std::array<double, 3>> grad(static_cast<std::size_t>(p));
  for (int d = 0; d < dim; ++d) {
    grad[0][static_cast<std::size_t>(d)] = -1.0;
    grad[static_cast<std::size_t>(d) + 1][static_cast<std::size_t>(d)] = 1.0;
  }

  const QuadratureRule rule = dim == 2 ? triangle_rule(2) : tetrahedron_rule(2);
  el.mass_hat = DenseMatrix(p, p);
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const auto& x = rule.points[q];
    const double w = rule.weights[q];
    std::vector<double> v(static_cast<std::size_t>(p));
    double s = 0.0;
    for (int d = 0; d < dim; ++d) s += x[static_cast<std::size_t>(d)];
    v[0] = 1.0 - s;
    for (int d = 0; d < dim; ++d) v[static_cast<std::size_t>(d) + 1] = x[static_cast<std::size_t>(d)];
    for (int l = 0; l < p; ++l)
      for (int m = 0; m < p; ++m)
        el.mass_hat(l, m) += w * v[static_cast<std::size_t>(l)] * v[static_cast<std::size_t>(m)];
  }

  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      DenseMatrix s(p, p);
      for (int l = 0; l < p; ++l)
        for (int m = 0; m < p; ++m)
          s(l, m) = el.volume * grad[static_cast<std::size_t>(l)][static_cast<std::size_t>(a)] *
                    grad[static_cast<std::size_t>(m)][static_cast<std::size_t>(b)];
      el.stiff_hat[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = s;
    }
  }
  return el;
}

}  // namespace

ReferenceElement reference_element(int dim, int order) {
  ReferenceElement el;
  if (dim == 1 && order >= 1 && order <= 5) {
    el = line_element(order);
  } else if ((dim == 2 || dim == 3) && order == 1) {
    el = simplex_element(dim);
  } else {
    throw UnsupportedElement("reference_element: supported are 1-D orders 1..5 and 2-D/3-D order 1");
  }

  DenseMatrix copy = el.mass_hat;
  const std::vector<double> eig = jacobi_eigenvalues(copy);
  el.lambda_hat_min = eig.front();
  el.lambda_hat_max = eig.back();
  return el;
}

}  // namespace meshgrad
