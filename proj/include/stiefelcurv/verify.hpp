#pragma once

#include <string>
#include <vector>

#include "stiefelcurv/cheeger.hpp"
#include "stiefelcurv/curvature.hpp"
#include "stiefelcurv/einstein.hpp"
#include "stiefelcurv/range.hpp"

namespace stcurv {

struct SuiteResult {
  std::string name;
  double max_dev;
  double tol;
  int instances;
  bool pass;
};

struct VerifyOptions {
  int instances = 100;
  int n_max = 5;
  uint64_t seed = 2024;
};

// Pairwise agreement of the three curvature paths (coordinate formula,
// ambient Christoffel-derivative formula in both term orderings, and the
// Lie-theoretic deformation path), relative deviation.
SuiteResult suite_cross_path(const VerifyOptions& o);
// Finite-difference oracle for the ambient path.
SuiteResult suite_cross_path_fd(const VerifyOptions& o);
// Representative sections against their closed-form curvature values.
SuiteResult suite_corner_sections();
// Antisymmetry, pair symmetry, first Bianchi identity.
SuiteResult suite_tensor_symmetry(const VerifyOptions& o);
// Closed-form operator traces against basis-sum brute force.
SuiteResult suite_trace_identities(const VerifyOptions& o);
// Deformation-metric identities: adjoint relation, metric-compatible bracket,
// horizontal projection identity, weighted-sum sectional formula.
SuiteResult suite_deformation_identities(const VerifyOptions& o);
// Quadratic-in-t structure of the deformed curvature.
SuiteResult suite_deformation_interpolation(const VerifyOptions& o);
// Einstein parameter roots: proportionality at roots, deviation off roots.
SuiteResult suite_einstein();
// Ricci closed form vs coordinate-basis trace; scalar vs double trace.
SuiteResult suite_ricci_scalar();
// Special values of the l-curve and stationarity of the gamma family.
SuiteResult suite_special_values();

std::vector<SuiteResult> run_all_suites(const VerifyOptions& o);

}  // namespace stcurv
