#include "stiefelcurv/einstein.hpp"

#include <algorithm>
#include <cmath>

namespace stcurv {

EinsteinSolution einstein_alphas(int n, int p) {
  if (p < 2 || p >= n)
    throw std::invalid_argument("einstein_alphas: requires 2 <= p < n");
  const double a = n - 1.0, b = -(n - 2.0), c = (p - 2.0) / 4.0;
  double disc = b * b - 4.0 * a * c;  // (n-2)^2 - (n-1)(p-2)
  EinsteinSolution sol{n, p, {}, disc};
  if (p == 2) {
    sol.roots = {(n - 2.0) / (n - 1.0)};
    return sol;
  }
  if (disc < 0.0)
    throw std::domain_error("einstein_alphas: negative discriminant");
  // stable quadratic: big root via -(b + sign(b) sqrt(disc))/2a, other via
  // product of roots
  double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double r1 = q / a;
  double r2 = c / q;
  if (r1 > r2) std::swap(r1, r2);
  sol.roots = {r1, r2};
  return sol;
}

double ricci_eigen_a(double alpha, int n, int p) {
  return (p - 2.0) / (4.0 * alpha) + (n - p) * alpha;
}

double ricci_eigen_b(double alpha, int n, int p) {
  return (1.0 - p) * alpha + (n - 2.0);
}

double verify_einstein(const MetricParams& params, int n, int p, int trials,
                       uint64_t seed) {
  double lambda = ricci_eigen_b(params.alpha, n, p);
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    TangentCoords xi = random_tangent(rng, n, p);
    TangentCoords eta = random_tangent(rng, n, p);
    double dev = std::abs(ricci(params, n, p, xi, eta) -
                          lambda * metric_inner(params, xi, eta));
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace stcurv
