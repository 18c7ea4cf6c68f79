#include "meshgrad/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace meshgrad {

QuadratureRule gauss_legendre_01(int npts) {
  // Nodes/weights on [-1,1]; symmetric halves listed once.
  static const double kNodes[8][4] = {
      {0.0},
      {0.5773502691896257645},
      {0.0, 0.7745966692414833770},
      {0.3399810435848562648, 0.8611363115940525752},
      {0.0, 0.5384693101056830910, 0.9061798459386639938},
      {0.2386191860831969086, 0.6612093864662645136, 0.9324695142031520278},
      {0.0, 0.4058451513773971669, 0.7415311855993944399, 0.9491079123427585245},
      {0.1834346424956498049, 0.5255324099163289858, 0.7966664774136267395,
       0.9602898564975362317}};
  static const double kWeights[8][4] = {
      {2.0},
      {1.0},
      {0.8888888888888888889, 0.5555555555555555556},
      {0.6521451548625461426, 0.3478548451374538574},
      {0.5688888888888888889, 0.4786286704993664680, 0.2369268850561890875},
      {0.4679139345726910474, 0.3607615730481386076, 0.1713244923791703450},
      {0.4179591836734693878, 0.3818300505051189449, 0.2797053914892766679,
       0.1294849661688696933},
      {0.3626837833783619830, 0.3137066458778872873, 0.2223810344533744705,
       0.1012285362903762592}};

  if (npts < 1 || npts > 8) throw std::invalid_argument("gauss_legendre_01: npts in 1..8");

  QuadratureRule rule;
  const int half = (npts + 1) / 2;
  const bool odd = (npts % 2) != 0;
  for (int i = half - 1; i >= 0; --i) {
    const double x = kNodes[npts - 1][i];
    const double w = kWeights[npts - 1][i];
    if (odd && i == 0) {
      rule.points.push_back({0.5, 0.0, 0.0});
      rule.weights.push_back(w * 0.5);
    } else {
      rule.points.push_back({0.5 * (1.0 - x), 0.0, 0.0});
      rule.weights.push_back(w * 0.5);
      rule.points.push_back({0.5 * (1.0 + x), 0.0, 0.0});
      rule.weights.push_back(w * 0.5);
    }
  }
  return rule;
}

QuadratureRule triangle_rule(int degree) {
  QuadratureRule rule;
  if (degree <= 2) {
    // Edge midpoints, weight area/3 each.
    rule.points = {{0.5, 0.0, 0.0}, {0.5, 0.5, 0.0}, {0.0, 0.5, 0.0}};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    return rule;
  }
  if (degree <= 4) {
    // Six-point symmetric rule, exact to degree 4.
    const double a1 = 0.445948490915965, w1 = 0.223381589678011;
    const double a2 = 0.091576213509771, w2 = 0.109951743655322;
    auto add3 = [&](double a, double w) {
      rule.points.push_back({a, a, 0.0});
      rule.points.push_back({1.0 - 2.0 * a, a, 0.0});
      rule.points.push_back({a, 1.0 - 2.0 * a, 0.0});
      // Weights are normalised to the unit triangle area 1/2.
      for (int k = 0; k < 3; ++k) rule.weights.push_back(w * 0.5);
    };
    add3(a1, w1);
    add3(a2, w2);
    return rule;
  }
  throw std::invalid_argument("triangle_rule: degree <= 4 only");
}

QuadratureRule tetrahedron_rule(int degree) {
  if (degree > 2) throw std::invalid_argument("tetrahedron_rule: degree <= 2 only");
  QuadratureRule rule;
  const double alpha = (5.0 + 3.0 * std::sqrt(5.0)) / 20.0;
  const double beta = (5.0 - std::sqrt(5.0)) / 20.0;
  const double w = (1.0 / 6.0) / 4.0;  // volume / 4
  // Barycentric (alpha, beta, beta, beta) permutations; first coordinate is
  // the weight of vertex 0 = origin, the rest map to x, y, z.
  const double bary[4][4] = {{alpha, beta, beta, beta},
                             {beta, alpha, beta, beta},
                             {beta, beta, alpha, beta},
                             {beta, beta, beta, alpha}};
  for (auto& b : bary) {
    rule.points.push_back({b[1], b[2], b[3]});
    rule.weights.push_back(w);
  }
  return rule;
}

}  // namespace meshgrad
