#pragma once

#include "stiefelcurv/matlin.hpp"
#include "stiefelcurv/rng.hpp"

namespace stcurv {

// Deformation parameter alpha = alpha1/alpha0 with alpha0 normalized to 1.
// The Cheeger identification uses t = 2*alpha.
struct MetricParams {
  double alpha;
  explicit MetricParams(double a) : alpha(a) {
    if (!(a > 0.0)) throw std::invalid_argument("MetricParams: alpha must be positive");
  }
  double t() const { return 2.0 * alpha; }
};

// Orthonormal point Y on St(p,n) together with a completed orthonormal
// complement Yperp (n x (n-p)).
struct StiefelFrame {
  int n, p;
  Mat Y;      // n x p
  Mat Yperp;  // n x (n-p)

  StiefelFrame(Mat y, Mat yperp);
};

// Tangent vector in block coordinates: omega = Y*A + Yperp*B.
struct TangentCoords {
  SkewMat A;  // p x p
  Mat B;      // (n-p) x p

  TangentCoords(SkewMat a, Mat b) : A(std::move(a)), B(std::move(b)) {
    if (B.cols() != A.dim())
      throw std::invalid_argument("TangentCoords: B column count must equal dim(A)");
  }
  int p() const { return A.dim(); }
  int n() const { return A.dim() + B.rows(); }
};

using AmbientVector = Mat;  // general n x p ambient element

StiefelFrame complete_frame(const Mat& y);

// (Y^T W, Yperp^T W); no symmetry assumption on the first block
std::pair<Mat, Mat> to_coords(const StiefelFrame& frame, const AmbientVector& w);
AmbientVector from_coords(const StiefelFrame& frame, const TangentCoords& coords);
// skew-symmetrizes the A-block: A <- (Y^T W - W^T Y)/2
TangentCoords project_tangent(const StiefelFrame& frame, const AmbientVector& w);

// ||Y^T w + w^T Y||_F, zero for tangent vectors
double tangency_residual(const StiefelFrame& frame, const AmbientVector& w);

// alpha Tr(A1^T A2) + Tr(B1^T B2)
double metric_inner(const MetricParams& params, const TangentCoords& xi,
                    const TangentCoords& eta);

// metric operator g_Y w = w + (alpha - 1) Y Y^T w on the ambient space
AmbientVector metric_operator(const MetricParams& params, const StiefelFrame& frame,
                              const AmbientVector& w);

// Christoffel function, defined for all ambient pairs:
//   (1/2) Y (w1^T w2 + w2^T w1) + (1-alpha)(I - Y Y^T)(w1 w2^T + w2 w1^T) Y
AmbientVector christoffel(const MetricParams& params, const StiefelFrame& frame,
                          const AmbientVector& w1, const AmbientVector& w2);

// Levi-Civita connection with the directional derivative supplied by the
// caller: D_V Z + (1/2) Y (V^T Z + Z^T V) + ((2-t)/2)(I - Y Y^T)(V Z^T + Z V^T) Y
AmbientVector connection(const MetricParams& params, const StiefelFrame& frame,
                         const TangentCoords& v, const AmbientVector& z_value,
                         const AmbientVector& dz_along_v);

// Polar retraction Y(s) = (Y + s xi)(I + s^2 xi^T xi)^{-1/2}, re-completed.
StiefelFrame retract_polar(const StiefelFrame& frame, const TangentCoords& xi, double s);

// Random helpers shared by tests, the verifier, and the optimizer.
Mat random_mat(Rng& rng, int rows, int cols);
SkewMat random_skew(Rng& rng, int dim);
TangentCoords random_tangent(Rng& rng, int n, int p);
StiefelFrame random_frame(Rng& rng, int n, int p);

}  // namespace stcurv
