#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stiefelcurv/curvature.hpp"

namespace stcurv {

// gamma-parameterized section family and its minimizer (the "l" curve)
double frak_c(double alpha, double gamma);
double gamma_min(double alpha);              // singular at alpha = 7/10
bool gamma_min_valid(double alpha);          // gamma_min >= 0 (a real section exists)
double frak_l(double alpha);                 // frak_c(gamma_min), extended by continuity

struct Section {
  TangentCoords xi, eta;
};

// One representative section: an explicit (A1,B1,A2,B2) recipe with a known
// closed-form sectional curvature.
struct CornerSection {
  std::string label;
  std::function<bool(int n, int p)> shape_ok;
  std::function<bool(double alpha)> alpha_ok;
  std::function<Section(int n, int p, double alpha)> build;
  std::function<double(double alpha)> kappa_formula;
};

// All representative sections whose shape predicate holds for (n,p)
std::vector<CornerSection> corner_sections(int n, int p);

struct Interval {
  double lo, hi;
};

// Interval contained in the sectional curvature range; p = 2 delegates to
// p2_range, p >= 3 follows the piecewise table.
Interval interval_table(int n, int p, double alpha);
Interval p2_range(int n, double alpha);

struct NelderMeadOptions {
  int max_iters = 2000;
  double diameter_tol = 1e-10;
  double initial_step = 0.5;
};

// Standard Nelder-Mead simplex (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2). Returns the best vertex and its value.
std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const NelderMeadOptions& opts = {});

struct RangeReport {
  int n, p;
  double alpha;
  double kappa_min, kappa_max;
  SectionEval argmin, argmax;
  int restarts_used;
  uint64_t seed;
};

RangeReport optimize_range(int n, int p, double alpha, int restarts, uint64_t seed);

struct SweepRow {
  double alpha;
  RangeReport report;
  Interval interval;
  bool containment_ok;  // interval inside [kappa_min - tol, kappa_max + tol]
  std::vector<std::pair<std::string, double>> corners;  // applicable corner values
  std::optional<std::string> error;
};

std::vector<SweepRow> sweep(int n, int p, const std::vector<double>& alpha_grid,
                            int restarts, uint64_t seed);

// CSV with 17-significant-digit floats; corner columns cover the union of
// labels applicable anywhere on the grid.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace stcurv
