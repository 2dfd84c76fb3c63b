#pragma once

#include <vector>

#include "stiefelcurv/curvature.hpp"

namespace stcurv {

// Roots of (n-1) a^2 - (n-2) a + (p-2)/4 = 0; the alpha values for which the
// Ricci tensor is proportional to the metric.
struct EinsteinSolution {
  int n, p;
  std::vector<double> roots;  // ascending, all positive; one root when p = 2
  double discriminant;
};

EinsteinSolution einstein_alphas(int n, int p);

// Ricci-map eigenvalues; these coincide at Einstein roots.
double ricci_eigen_a(double alpha, int n, int p);  // (p-2)/(4 alpha) + (n-p) alpha
double ricci_eigen_b(double alpha, int n, int p);  // (1-p) alpha + (n-2)

// max |Ric(xi,eta) - lambda <xi,eta>_g| over random tangent pairs, with
// lambda the B-block eigenvalue.
double verify_einstein(const MetricParams& params, int n, int p, int trials,
                       uint64_t seed = 12345);

}  // namespace stcurv
