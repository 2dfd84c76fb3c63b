#include "stiefelcurv/cheeger.hpp"

#include <cmath>

namespace stcurv {

SkewTriple::SkewTriple(SkewMat a, Mat b, SkewMat h)
    : p(a.dim()), n(a.dim() + b.rows()), A(std::move(a)), B(std::move(b)), H(std::move(h)) {
  if (B.cols() != p) throw std::invalid_argument("SkewTriple: B must be (n-p) x p");
  if (H.dim() != n - p) throw std::invalid_argument("SkewTriple: H must be (n-p) x (n-p)");
}

SkewTriple SkewTriple::zero(int n, int p) {
  return SkewTriple(SkewMat(p), Mat(n - p, p), SkewMat(n - p));
}

SkewTriple SkewTriple::from_tangent(const TangentCoords& x) {
  return SkewTriple(x.A, x.B, SkewMat(x.B.rows()));
}

Mat SkewTriple::assemble() const {
  Mat m(n, n);
  Mat a = A.full(), h = H.full();
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) m(i, j) = a(i, j);
  for (int i = 0; i < n - p; ++i)
    for (int j = 0; j < p; ++j) {
      m(p + i, j) = B(i, j);
      m(j, p + i) = -B(i, j);
    }
  for (int i = 0; i < n - p; ++i)
    for (int j = 0; j < n - p; ++j) m(p + i, p + j) = h(i, j);
  return m;
}

bool SkewTriple::h_is_zero() const {
  for (double x : H.lower())
    if (x != 0.0) return false;
  return true;
}

SkewTriple split_skew(const Mat& w, int p) {
  int n = w.rows();
  if (w.cols() != n || p <= 0 || p >= n)
    throw std::invalid_argument("split_skew: bad shape or block size");
  Mat a(p, p), b(n - p, p), h(n - p, n - p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = w(i, j);
  for (int i = 0; i < n - p; ++i)
    for (int j = 0; j < p; ++j) b(i, j) = w(p + i, j);
  for (int i = 0; i < n - p; ++i)
    for (int j = 0; j < n - p; ++j) h(i, j) = w(p + i, p + j);
  return SkewTriple(SkewMat::from_skew_part(a), std::move(b), SkewMat::from_skew_part(h));
}

static void check_compat(const SkewTriple& a, const SkewTriple& b) {
  if (a.n != b.n || a.p != b.p)
    throw std::invalid_argument("SkewTriple: (n,p) mismatch");
}

SkewTriple operator+(const SkewTriple& a, const SkewTriple& b) {
  check_compat(a, b);
  return SkewTriple(a.A + b.A, a.B + b.B, a.H + b.H);
}

SkewTriple operator-(const SkewTriple& a, const SkewTriple& b) {
  check_compat(a, b);
  return SkewTriple(a.A - b.A, a.B - b.B, a.H - b.H);
}

SkewTriple operator*(double s, const SkewTriple& a) {
  return SkewTriple(s * a.A, s * a.B, s * a.H);
}

double biinvariant_inner(const SkewTriple& w1, const SkewTriple& w2) {
  check_compat(w1, w2);
  // (1/2)Tr(w1^T w2) = (1/2)Tr(A1^T A2) + Tr(B1^T B2) + (1/2)Tr(H1^T H2)
  return 0.5 * inner_frob(w1.A.full(), w2.A.full()) + inner_frob(w1.B, w2.B) +
         0.5 * inner_frob(w1.H.full(), w2.H.full());
}

double deformed_inner(const DeformParams& params, const SkewTriple& w1,
                      const SkewTriple& w2) {
  check_compat(w1, w2);
  return 0.5 * params.t * inner_frob(w1.A.full(), w2.A.full()) +
         inner_frob(w1.B, w2.B) + 0.5 * inner_frob(w1.H.full(), w2.H.full());
}

SkewTriple apply_Pt(const DeformParams& params, const SkewTriple& w) {
  return SkewTriple(params.t * w.A, w.B, w.H);
}

SkewTriple apply_Pt_inv(const DeformParams& params, const SkewTriple& w) {
  return SkewTriple((1.0 / params.t) * w.A, w.B, w.H);
}

SkewTriple bracket(const SkewTriple& w1, const SkewTriple& w2) {
  check_compat(w1, w2);
  Mat A1 = w1.A.full(), A2 = w2.A.full(), H1 = w1.H.full(), H2 = w2.H.full();
  const Mat &B1 = w1.B, &B2 = w2.B;
  Mat a = commutator(A1, A2) + transpose(B2) * B1 - transpose(B1) * B2;
  Mat b = B1 * A2 + H1 * B2 - B2 * A1 - H2 * B1;
  Mat h = commutator(H1, H2) + B2 * transpose(B1) - B1 * transpose(B2);
  return SkewTriple(SkewMat::from_skew_part(a), std::move(b), SkewMat::from_skew_part(h));
}

SkewTriple bracket_P(const DeformParams& params, const SkewTriple& w1,
                     const SkewTriple& w2) {
  check_compat(w1, w2);
  const double t = params.t;
  Mat A1 = w1.A.full(), A2 = w2.A.full(), H1 = w1.H.full(), H2 = w2.H.full();
  const Mat &B1 = w1.B, &B2 = w2.B;
  Mat a = commutator(A1, A2) + transpose(B2) * B1 - transpose(B1) * B2;
  Mat b = t * (B1 * A2) + H1 * B2 + (t - 2.0) * (B2 * A1) - H2 * B1;
  Mat h = commutator(H1, H2) + B2 * transpose(B1) - B1 * transpose(B2);
  return SkewTriple(SkewMat::from_skew_part(a), std::move(b), SkewMat::from_skew_part(h));
}

SkewTriple proj_a(const SkewTriple& w) {
  return SkewTriple(w.A, Mat(w.n - w.p, w.p), SkewMat(w.n - w.p));
}
SkewTriple proj_b(const SkewTriple& w) {
  return SkewTriple(SkewMat(w.p), w.B, SkewMat(w.n - w.p));
}
SkewTriple proj_h(const SkewTriple& w) {
  return SkewTriple(SkewMat(w.p), Mat(w.n - w.p, w.p), w.H);
}
SkewTriple proj_m(const SkewTriple& w) {
  return SkewTriple(w.A, w.B, SkewMat(w.n - w.p));
}
SkewTriple proj_n(const SkewTriple& w) {
  return SkewTriple(SkewMat(w.p), w.B, w.H);
}

AbhParts decompose_abh(const SkewTriple& w) {
  return AbhParts{proj_a(w), proj_b(w), proj_h(w), proj_h(w), proj_m(w), proj_n(w)};
}

SkewTriple ad_dagger(const DeformParams& params, const SkewTriple& w1,
                     const SkewTriple& w2) {
  check_compat(w1, w2);
  const double t = params.t;
  SkewTriple a1 = proj_a(w1), a2 = proj_a(w2);
  SkewTriple n1 = proj_n(w1), n2 = proj_n(w2);
  SkewTriple b1 = proj_b(w1), b2 = proj_b(w2);
  SkewTriple nn = bracket(n1, n2);
  // a-part: -[w1_a, w2_a] - (1/t)[w1_n, w2_n]_a
  SkewTriple pa = (-1.0) * proj_a(bracket(a1, a2)) - (1.0 / t) * proj_a(nn);
  // n-part: -[w1_a, w2_b] + t[w2_a, w1_b] - [w1_n, w2_n]_n
  SkewTriple pn = (-1.0) * bracket(a1, b2) + t * bracket(a2, b1) - proj_n(nn);
  return pa + pn;
}

SkewTriple group_curvature(const DeformParams& params, const SkewTriple& w1,
                           const SkewTriple& w2, const SkewTriple& w3) {
  check_compat(w1, w2);
  check_compat(w1, w3);
  SkewTriple c12 = bracket(w1, w2);
  return 0.5 * bracket_P(params, c12, w3) -
         0.25 * bracket_P(params, w1, bracket_P(params, w2, w3)) +
         0.25 * bracket_P(params, w2, bracket_P(params, w1, w3));
}

static void check_in_m(const SkewTriple& w, const char* name) {
  if (!w.h_is_zero())
    throw std::invalid_argument(std::string("cheeger: ") + name +
                                " must lie in m (H-block zero)");
}

SkewTriple hom_curvature(const DeformParams& params, const SkewTriple& w1,
                         const SkewTriple& w2, const SkewTriple& w3) {
  check_in_m(w1, "w1");
  check_in_m(w2, "w2");
  check_in_m(w3, "w3");
  SkewTriple g = group_curvature(params, w1, w2, w3);
  // O'Neil terms: (ad^+_{w}[x,y]_k)_m = -[w, [x,y]_k] for w in m
  SkewTriple k12 = proj_h(bracket(w1, w2));
  SkewTriple k23 = proj_h(bracket(w2, w3));
  SkewTriple k13 = proj_h(bracket(w1, w3));
  SkewTriple oneil = (-0.5) * bracket(w3, k12) + 0.25 * bracket(w1, k23) -
                     0.25 * bracket(w2, k13);
  // the bracket of an m-element with a k-element stays in m
  if (!oneil.h_is_zero())
    throw std::logic_error("hom_curvature: O'Neil term left m");
  return proj_m(g + oneil);
}

PtCurvatureSplit curvature_Pt_decomposed(const SkewTriple& w1, const SkewTriple& w2,
                                         const SkewTriple& w3) {
  check_in_m(w1, "w1");
  check_in_m(w2, "w2");
  check_in_m(w3, "w3");
  SkewTriple c12 = bracket(w1, w2);
  SkewTriple c23 = bracket(w2, w3);
  SkewTriple c13 = bracket(w1, w3);
  SkewTriple k12 = proj_h(c12), k23 = proj_h(c23), k13 = proj_h(c13);

  SkewTriple r0 = 0.25 * (proj_m(bracket(c12, w3)) + 2.0 * bracket(k12, w3) -
                          bracket(k23, w1) + bracket(k13, w2));

  SkewTriple a1 = proj_a(w1), a2 = proj_a(w2), a3 = proj_a(w3);
  SkewTriple b1 = proj_b(w1), b2 = proj_b(w2), b3 = proj_b(w3);

  SkewTriple m23 = bracket(a2, b3) + bracket(a3, b2);
  SkewTriple m13 = bracket(a1, b3) + bracket(a3, b1);

  SkewTriple r1 =
      0.5 * (bracket(proj_a(c12), b3) + bracket(a3, proj_b(c12))) -
      0.25 * proj_m(bracket(w1, m23) + bracket(a1, proj_b(c23)) + bracket(proj_a(c23), b1)) +
      0.25 * proj_m(bracket(w2, m13) + bracket(a2, proj_b(c13)) + bracket(proj_a(c13), b2));

  SkewTriple r2 = 0.25 * ((-1.0) * bracket(a1, m23) + bracket(a2, m13));

  return PtCurvatureSplit{r0, r1, r2};
}

Mat horizontal_lift(const StiefelFrame& frame, const AmbientVector& eta) {
  if (eta.rows() != frame.n || eta.cols() != frame.p)
    throw std::invalid_argument("horizontal_lift: shape mismatch");
  if (tangency_residual(frame, eta) > 1e-8)
    throw std::invalid_argument("horizontal_lift: eta is not tangent");
  Mat right = (-1.0) * (frame.Y * (transpose(eta) * frame.Yperp));  // n x (n-p)
  Mat lift(frame.n, frame.n);
  for (int i = 0; i < frame.n; ++i) {
    for (int j = 0; j < frame.p; ++j) lift(i, j) = eta(i, j);
    for (int j = 0; j < frame.n - frame.p; ++j) lift(i, frame.p + j) = right(i, j);
  }
  return lift;
}

double gz_sectional(const DeformParams& params, const SkewTriple& w1,
                    const SkewTriple& w2) {
  check_in_m(w1, "w1");
  check_in_m(w2, "w2");
  const double t = params.t;
  SkewTriple a1 = proj_a(w1), a2 = proj_a(w2);
  SkewTriple n1 = proj_n(w1), n2 = proj_n(w2);
  SkewTriple nn = bracket(n1, n2);
  SkewTriple aa = bracket(a1, a2);

  SkewTriple v1 = proj_n(nn) + t * bracket(a1, n2) + t * bracket(n1, a2);
  SkewTriple v2 = proj_a(nn) + (t * t) * aa;
  SkewTriple v4 = proj_a(nn) + t * aa;
  SkewTriple v5 = proj_h(bracket(w1, w2));

  auto nrm2 = [](const SkewTriple& v) { return biinvariant_inner(v, v); };
  double omt = 1.0 - t;
  return 0.25 * nrm2(v1) + 0.25 * nrm2(v2) + 0.25 * t * omt * omt * omt * nrm2(aa) +
         0.75 * omt * nrm2(v4) + 0.75 * nrm2(v5);
}

}  // namespace stcurv
