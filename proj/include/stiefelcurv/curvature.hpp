#pragma once

#include "stiefelcurv/stiefel.hpp"

namespace stcurv {

// R_{xi,eta}phi in block coordinates: Y*A_R + Yperp*B_R.
struct CurvatureCoords {
  SkewMat A_R;
  Mat B_R;
};

struct SectionEval {
  TangentCoords xi, eta;
  double numerator;  // <R_{xi,eta} xi, eta>_g
  double wedge;      // ||xi /\ eta||_g^2
  double kappa;      // numerator / wedge, NaN when degenerate
  bool kappa_defined;
};

// Closed-form (1,3) curvature in block coordinates. Sign convention:
// R_{XY}Z = nabla_{[X,Y]}Z - nabla_X nabla_Y Z + nabla_Y nabla_X Z.
CurvatureCoords curvature_coords(const MetricParams& params, const TangentCoords& x1,
                                 const TangentCoords& x2, const TangentCoords& x3);

// Ambient-path curvature from the Christoffel function and its analytic
// directional derivative:
//   -(D_xi Gamma)(eta,phi) + (D_eta Gamma)(xi,phi)
//   - Gamma(xi, Gamma(eta,phi)) + Gamma(eta, Gamma(xi,phi))
AmbientVector curvature_ambient_analytic(const MetricParams& params,
                                         const StiefelFrame& frame,
                                         const AmbientVector& xi, const AmbientVector& eta,
                                         const AmbientVector& phi);

// Same, with the second ordering of the Gamma-composition terms
// (Gamma(Gamma(phi,eta),xi) form); agrees with the first by symmetry of Gamma.
AmbientVector curvature_ambient_analytic2(const MetricParams& params,
                                          const StiefelFrame& frame,
                                          const AmbientVector& xi, const AmbientVector& eta,
                                          const AmbientVector& phi);

// Ambient path with D Gamma taken by central differences along polar
// retraction curves. step must lie in [1e-6, 1e-2].
AmbientVector curvature_ambient_fd(const MetricParams& params, const StiefelFrame& frame,
                                   const AmbientVector& xi, const AmbientVector& eta,
                                   const AmbientVector& phi, double step);

// Ric(x1,x2) = ((2-p)/4 + (p-n) a^2) Tr(A1 A2) + ((1-p) a + n-2) Tr(B1^T B2).
// Requires p > 1.
double ricci(const MetricParams& params, int n, int p, const TangentCoords& x1,
             const TangentCoords& x2);

double scalar_curvature(const MetricParams& params, int n, int p);

enum class NumeratorForm { TraceForm, SumSq, SumSq2 };

double sectional_numerator(const MetricParams& params, const TangentCoords& x1,
                           const TangentCoords& x2, NumeratorForm form);

SectionEval sectional(const MetricParams& params, const TangentCoords& x1,
                      const TangentCoords& x2);

// <R_{x1,x2} x3, x4>_g via curvature_coords
double curvature_quad(const MetricParams& params, const TangentCoords& x1,
                      const TangentCoords& x2, const TangentCoords& x3,
                      const TangentCoords& x4);

constexpr double kWedgeDegenerate = 1e-10;

}  // namespace stcurv
