#include "stiefelcurv/stiefel.hpp"

#include <cmath>

namespace stcurv {

static double orthonormality_residual(const Mat& y) {
  Mat g = transpose(y) * y;
  return frobenius(g - Mat::identity(y.cols()));
}

StiefelFrame::StiefelFrame(Mat y, Mat yperp)
    : n(y.rows()), p(y.cols()), Y(std::move(y)), Yperp(std::move(yperp)) {
  if (Yperp.rows() != n || Yperp.cols() != n - p)
    throw std::invalid_argument("StiefelFrame: Yperp must be n x (n-p)");
  if (p >= n) throw std::invalid_argument("StiefelFrame: requires p < n");
  const double tol = 1e-10;
  if (orthonormality_residual(Y) > tol)
    throw std::invalid_argument("StiefelFrame: Y not orthonormal");
  if (orthonormality_residual(Yperp) > tol)
    throw std::invalid_argument("StiefelFrame: Yperp not orthonormal");
  if (frobenius(transpose(Y) * Yperp) > tol)
    throw std::invalid_argument("StiefelFrame: Y and Yperp not orthogonal");
}

StiefelFrame complete_frame(const Mat& y) {
  int n = y.rows(), p = y.cols();
  if (p >= n) throw std::invalid_argument("complete_frame: requires p < n");
  if (orthonormality_residual(y) > 1e-10)
    throw std::invalid_argument("complete_frame: Y not orthonormal within 1e-10");
  // QR of (Y | I): the trailing n-p orthonormal columns of Q span the complement
  Mat ext(n, p + n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) ext(i, j) = y(i, j);
    ext(i, p + i) = 1.0;
  }
  Mat q, r;
  qr_householder(ext, q, r);
  Mat yperp(n, n - p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n - p; ++j) yperp(i, j) = q(i, p + j);
  return StiefelFrame(y, yperp);
}

std::pair<Mat, Mat> to_coords(const StiefelFrame& frame, const AmbientVector& w) {
  if (w.rows() != frame.n || w.cols() != frame.p)
    throw std::invalid_argument("to_coords: shape mismatch " + shape_str(w));
  return {transpose(frame.Y) * w, transpose(frame.Yperp) * w};
}

AmbientVector from_coords(const StiefelFrame& frame, const TangentCoords& coords) {
  if (coords.p() != frame.p || coords.B.rows() != frame.n - frame.p)
    throw std::invalid_argument("from_coords: shape mismatch");
  return frame.Y * coords.A.full() + frame.Yperp * coords.B;
}

TangentCoords project_tangent(const StiefelFrame& frame, const AmbientVector& w) {
  auto [a, b] = to_coords(frame, w);
  return TangentCoords(SkewMat::from_skew_part(a), std::move(b));
}

double tangency_residual(const StiefelFrame& frame, const AmbientVector& w) {
  Mat ytw = transpose(frame.Y) * w;
  return frobenius(ytw + transpose(ytw));
}

double metric_inner(const MetricParams& params, const TangentCoords& xi,
                    const TangentCoords& eta) {
  if (xi.p() != eta.p() || xi.B.rows() != eta.B.rows())
    throw std::invalid_argument("metric_inner: shape mismatch");
  return params.alpha * inner_frob(xi.A.full(), eta.A.full()) + inner_frob(xi.B, eta.B);
}

AmbientVector metric_operator(const MetricParams& params, const StiefelFrame& frame,
                              const AmbientVector& w) {
  return w + (params.alpha - 1.0) * (frame.Y * (transpose(frame.Y) * w));
}

AmbientVector christoffel(const MetricParams& params, const StiefelFrame& frame,
                          const AmbientVector& w1, const AmbientVector& w2) {
  if (!w1.same_shape(w2) || w1.rows() != frame.n || w1.cols() != frame.p)
    throw std::invalid_argument("christoffel: shape mismatch");
  const Mat& y = frame.Y;
  Mat sym = transpose(w1) * w2 + transpose(w2) * w1;       // p x p
  Mat outer = w1 * transpose(w2) + w2 * transpose(w1);     // n x n
  Mat oy = outer * y;
  return 0.5 * (y * sym) + (1.0 - params.alpha) * (oy - y * (transpose(y) * oy));
}

AmbientVector connection(const MetricParams& params, const StiefelFrame& frame,
                         const TangentCoords& v, const AmbientVector& z_value,
                         const AmbientVector& dz_along_v) {
  AmbientVector vv = from_coords(frame, v);
  const Mat& y = frame.Y;
  Mat sym = transpose(vv) * z_value + transpose(z_value) * vv;
  Mat outer = vv * transpose(z_value) + z_value * transpose(vv);
  Mat oy = outer * y;
  double c = 0.5 * (2.0 - params.t());
  return dz_along_v + 0.5 * (y * sym) + c * (oy - y * (transpose(y) * oy));
}

StiefelFrame retract_polar(const StiefelFrame& frame, const TangentCoords& xi, double s) {
  AmbientVector v = from_coords(frame, xi);
  Mat ys = frame.Y + s * v;
  Mat norm = Mat::identity(frame.p) + (s * s) * (transpose(v) * v);
  return complete_frame(ys * sym_inv_sqrt(norm));
}

Mat random_mat(Rng& rng, int rows, int cols) {
  Mat m(rows, cols);
  for (double& x : m.data()) x = rng.normal();
  return m;
}

SkewMat random_skew(Rng& rng, int dim) {
  std::vector<double> lo(SkewMat::lower_size(dim));
  for (double& x : lo) x = rng.normal();
  return SkewMat::from_lower(dim, std::move(lo));
}

TangentCoords random_tangent(Rng& rng, int n, int p) {
  return TangentCoords(random_skew(rng, p), random_mat(rng, n - p, p));
}

StiefelFrame random_frame(Rng& rng, int n, int p) {
  Mat g = random_mat(rng, n, p);
  Mat q, r;
  qr_householder(g, q, r);
  Mat y(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) y(i, j) = q(i, j);
  return complete_frame(y);
}

}  // namespace stcurv
