#include "stiefelcurv/curvature.hpp"

#include <cmath>

namespace stcurv {

static void check_compat(const TangentCoords& x1, const TangentCoords& x2) {
  if (x1.p() != x2.p() || x1.B.rows() != x2.B.rows())
    throw std::invalid_argument("curvature: tangent shape mismatch");
}

CurvatureCoords curvature_coords(const MetricParams& params, const TangentCoords& x1,
                                 const TangentCoords& x2, const TangentCoords& x3) {
  check_compat(x1, x2);
  check_compat(x1, x3);
  const double a = params.alpha;
  Mat A1 = x1.A.full(), A2 = x2.A.full(), A3 = x3.A.full();
  const Mat &B1 = x1.B, &B2 = x2.B, &B3 = x3.B;
  Mat B1t = transpose(B1), B2t = transpose(B2), B3t = transpose(B3);

  Mat ar = (0.25 * (1.0 - 2.0 * a)) *
               (A1 * (B3t * B2) - A2 * (B3t * B1) - B1t * (B3 * A2) + B2t * (B3 * A1)) +
           (0.5 * (1.0 - a)) *
               (A3 * (B1t * B2) - A3 * (B2t * B1) - B1t * (B2 * A3) + B2t * (B1 * A3)) +
           0.25 * (commutator(commutator(A1, A2), A3) - A1 * (B2t * B3) +
                   A2 * (B1t * B3) + B3t * (B1 * A2) - B3t * (B2 * A1));

  Mat br = (0.5 * (2.0 * a * a - a)) * (B1 * (A3 * A2) - B2 * (A3 * A1)) +
           (a * a - a) * (B3 * (A1 * A2) - B3 * (A2 * A1)) +
           (1.0 - a) * (B3 * (B1t * B2) - B3 * (B2t * B1)) +
           (0.5 * (a - 2.0)) * (B1 * (B2t * B3) - B2 * (B1t * B3)) +
           (0.5 * a) * (B1 * (A2 * A3) - B1 * (B3t * B2) - B2 * (A1 * A3) + B2 * (B3t * B1));

  // ar is antisymmetric up to roundoff for skew inputs; re-skew exactly
  return CurvatureCoords{SkewMat::from_skew_part(ar), std::move(br)};
}

static void check_tangent(const StiefelFrame& frame, const AmbientVector& w,
                          const char* name) {
  if (w.rows() != frame.n || w.cols() != frame.p)
    throw std::invalid_argument(std::string("curvature_ambient: bad shape for ") + name);
  if (tangency_residual(frame, w) > 1e-8)
    throw std::invalid_argument(std::string("curvature_ambient: ") + name +
                                " is not tangent (residual > 1e-8)");
}

// (D_xi Gamma)(eta, phi) from the closed-form derivative of Gamma
static AmbientVector dgamma(const MetricParams& params, const StiefelFrame& frame,
                            const AmbientVector& xi, const AmbientVector& eta,
                            const AmbientVector& phi) {
  const Mat& y = frame.Y;
  Mat sym = transpose(eta) * phi + transpose(phi) * eta;  // p x p
  Mat outer = eta * transpose(phi) + phi * transpose(eta);
  Mat oxi = outer * xi;
  Mat oy = outer * y;
  Mat proj_oxi = oxi - y * (transpose(y) * oxi);
  Mat mixed = xi * (transpose(y) * oy) + y * (transpose(xi) * oy);
  return 0.5 * (xi * sym) + (1.0 - params.alpha) * (proj_oxi - mixed);
}

AmbientVector curvature_ambient_analytic(const MetricParams& params,
                                         const StiefelFrame& frame,
                                         const AmbientVector& xi, const AmbientVector& eta,
                                         const AmbientVector& phi) {
  check_tangent(frame, xi, "xi");
  check_tangent(frame, eta, "eta");
  check_tangent(frame, phi, "phi");
  return -dgamma(params, frame, xi, eta, phi) + dgamma(params, frame, eta, xi, phi) -
         christoffel(params, frame, xi, christoffel(params, frame, eta, phi)) +
         christoffel(params, frame, eta, christoffel(params, frame, xi, phi));
}

AmbientVector curvature_ambient_analytic2(const MetricParams& params,
                                          const StiefelFrame& frame,
                                          const AmbientVector& xi, const AmbientVector& eta,
                                          const AmbientVector& phi) {
  check_tangent(frame, xi, "xi");
  check_tangent(frame, eta, "eta");
  check_tangent(frame, phi, "phi");
  return -dgamma(params, frame, xi, eta, phi) + dgamma(params, frame, eta, xi, phi) -
         christoffel(params, frame, christoffel(params, frame, phi, eta), xi) +
         christoffel(params, frame, christoffel(params, frame, phi, xi), eta);
}

AmbientVector curvature_ambient_fd(const MetricParams& params, const StiefelFrame& frame,
                                   const AmbientVector& xi, const AmbientVector& eta,
                                   const AmbientVector& phi, double step) {
  if (!(step >= 1e-6 && step <= 1e-2))
    throw std::invalid_argument("curvature_ambient_fd: step out of [1e-6, 1e-2]");
  check_tangent(frame, xi, "xi");
  check_tangent(frame, eta, "eta");
  check_tangent(frame, phi, "phi");

  auto fd_dgamma = [&](const AmbientVector& dir) {
    TangentCoords d = project_tangent(frame, dir);
    StiefelFrame fp = retract_polar(frame, d, step);
    StiefelFrame fm = retract_polar(frame, d, -step);
    Mat gp = christoffel(params, fp, eta, phi);
    Mat gm = christoffel(params, fm, eta, phi);
    return (1.0 / (2.0 * step)) * (gp - gm);
  };
  auto fd_dgamma2 = [&](const AmbientVector& dir) {
    TangentCoords d = project_tangent(frame, dir);
    StiefelFrame fp = retract_polar(frame, d, step);
    StiefelFrame fm = retract_polar(frame, d, -step);
    Mat gp = christoffel(params, fp, xi, phi);
    Mat gm = christoffel(params, fm, xi, phi);
    return (1.0 / (2.0 * step)) * (gp - gm);
  };

  return -fd_dgamma(xi) + fd_dgamma2(eta) -
         christoffel(params, frame, xi, christoffel(params, frame, eta, phi)) +
         christoffel(params, frame, eta, christoffel(params, frame, xi, phi));
}

double ricci(const MetricParams& params, int n, int p, const TangentCoords& x1,
             const TangentCoords& x2) {
  if (p <= 1) throw std::invalid_argument("ricci: requires p > 1");
  check_compat(x1, x2);
  if (x1.p() != p || x1.n() != n) throw std::invalid_argument("ricci: (n,p) mismatch");
  const double a = params.alpha;
  // plain product trace Tr(A1 A2), negative-definite on skew pairs
  double trA = trace(x1.A.full() * x2.A.full());
  double trB = inner_frob(x1.B, x2.B);
  return ((2.0 - p) / 4.0 + (p - n) * a * a) * trA + ((1.0 - p) * a + (n - 2.0)) * trB;
}

double scalar_curvature(const MetricParams& params, int n, int p) {
  if (p <= 1) throw std::invalid_argument("scalar_curvature: requires p > 1");
  if (p >= n) throw std::invalid_argument("scalar_curvature: requires p < n");
  const double a = params.alpha;
  return ((1.0 - p) * a + n - 2.0) * (n - p) * p +
         ((n - p) * a + (p - 2.0) / (4.0 * a)) * p * (p - 1.0) / 2.0;
}

double sectional_numerator(const MetricParams& params, const TangentCoords& x1,
                           const TangentCoords& x2, NumeratorForm form) {
  check_compat(x1, x2);
  const double a = params.alpha;
  Mat A1 = x1.A.full(), A2 = x2.A.full();
  const Mat &B1 = x1.B, &B2 = x2.B;
  Mat B1t = transpose(B1), B2t = transpose(B2);

  switch (form) {
    case NumeratorForm::TraceForm: {
      Mat C = commutator(A1, A2);
      double tB = trace((0.5 * (2.0 - 3.0 * a)) * (B2t * B1 * (B1t * B2)) +
                        (0.5 * (3.0 * a - 4.0)) * (B2t * B1 * (B2t * B1)) +
                        B2t * B2 * (B1t * B1) - 0.25 * a * (C * C));
      double tAB = a * trace((4.0 * a - 3.0) * (A1 * A2 * (B2t * B1)) +
                             (3.0 - 2.0 * a) * (A1 * A2 * (B1t * B2)) -
                             a * (A2 * A2 * (B1t * B1)) - a * (A1 * A1 * (B2t * B2)));
      return tB + tAB;
    }
    case NumeratorForm::SumSq: {
      Mat C = commutator(A1, A2);
      Mat S = B2t * B1 - B1t * B2;
      Mat M = B1 * A2 - B2 * A1;
      Mat O = B1 * B2t - B2 * B1t;
      double c = 1.0 - 2.0 * a;
      double f1 = frobenius(C + (3.0 - 4.0 * a) * S);
      double f2 = frobenius(M), f3 = frobenius(O), f4 = frobenius(S);
      return 0.25 * a * f1 * f1 + a * a * f2 * f2 + 0.5 * f3 * f3 +
             0.5 * c * c * c * f4 * f4;
    }
    case NumeratorForm::SumSq2: {
      Mat C = commutator(A1, A2);
      Mat S = B2t * B1 - B1t * B2;
      Mat M = B1 * A2 - B2 * A1;
      Mat O = B1 * B2t - B2 * B1t;
      double f1 = frobenius(C), f2 = frobenius(S), f3 = frobenius(M), f4 = frobenius(O);
      return 0.25 * a * f1 * f1 + 0.5 * a * (3.0 - 4.0 * a) * inner_frob(C, S) +
             0.25 * (2.0 - 3.0 * a) * f2 * f2 + a * a * f3 * f3 + 0.5 * f4 * f4;
    }
  }
  throw std::invalid_argument("sectional_numerator: unknown form");
}

SectionEval sectional(const MetricParams& params, const TangentCoords& x1,
                      const TangentCoords& x2) {
  double num = sectional_numerator(params, x1, x2, NumeratorForm::SumSq);
  double n1 = metric_inner(params, x1, x1);
  double n2 = metric_inner(params, x2, x2);
  double ip = metric_inner(params, x1, x2);
  double wedge = n1 * n2 - ip * ip;
  bool defined = wedge > kWedgeDegenerate;
  double kappa = defined ? num / wedge : std::nan("");
  return SectionEval{x1, x2, num, wedge, kappa, defined};
}

double curvature_quad(const MetricParams& params, const TangentCoords& x1,
                      const TangentCoords& x2, const TangentCoords& x3,
                      const TangentCoords& x4) {
  CurvatureCoords r = curvature_coords(params, x1, x2, x3);
  TangentCoords rc(std::move(r.A_R), std::move(r.B_R));
  return metric_inner(params, rc, x4);
}

}  // namespace stcurv
