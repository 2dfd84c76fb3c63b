#pragma once

#include "stiefelcurv/stiefel.hpp"

namespace stcurv {

// Element of o(n) split into the o(p) / off-diagonal / o(n-p) blocks:
// assembled matrix is [[A, -B^T], [B, H]].
struct SkewTriple {
  int p, n;
  SkewMat A;  // p x p
  Mat B;      // (n-p) x p
  SkewMat H;  // (n-p) x (n-p)

  SkewTriple(SkewMat a, Mat b, SkewMat h);
  static SkewTriple zero(int n, int p);
  static SkewTriple from_tangent(const TangentCoords& x);  // H = 0

  Mat assemble() const;  // n x n antisymmetric
  bool h_is_zero() const;
};

SkewTriple split_skew(const Mat& w, int p);  // exact block extraction of o(n) element

SkewTriple operator+(const SkewTriple& a, const SkewTriple& b);
SkewTriple operator-(const SkewTriple& a, const SkewTriple& b);
SkewTriple operator*(double s, const SkewTriple& a);

// Cheeger deformation parameter; P_t scales the a-block of the bi-invariant
// form by t.
struct DeformParams {
  double t;
  explicit DeformParams(double t_) : t(t_) {
    if (!(t_ > 0.0)) throw std::invalid_argument("DeformParams: t must be positive");
  }
};

// Bi-invariant form (1/2) Tr(w1^T w2)
double biinvariant_inner(const SkewTriple& w1, const SkewTriple& w2);

// <w1, P_t w2>
double deformed_inner(const DeformParams& params, const SkewTriple& w1,
                      const SkewTriple& w2);

SkewTriple apply_Pt(const DeformParams& params, const SkewTriple& w);
SkewTriple apply_Pt_inv(const DeformParams& params, const SkewTriple& w);

SkewTriple bracket(const SkewTriple& w1, const SkewTriple& w2);
SkewTriple bracket_P(const DeformParams& params, const SkewTriple& w1,
                     const SkewTriple& w2);
SkewTriple ad_dagger(const DeformParams& params, const SkewTriple& w1,
                     const SkewTriple& w2);

// Curvature of SO(n) with the left-invariant metric P_t, at the identity
SkewTriple group_curvature(const DeformParams& params, const SkewTriple& w1,
                           const SkewTriple& w2, const SkewTriple& w3);

// Horizontal lift of the curvature of SO(n)/SO(n-p); inputs must lie in m
// (H-block zero)
SkewTriple hom_curvature(const DeformParams& params, const SkewTriple& w1,
                         const SkewTriple& w2, const SkewTriple& w3);

// R = R0 + (1-t) R1 + (1-t)^2 R2
struct PtCurvatureSplit {
  SkewTriple R0, R1, R2;
};
PtCurvatureSplit curvature_Pt_decomposed(const SkewTriple& w1, const SkewTriple& w2,
                                         const SkewTriple& w3);

// Projections onto the a / b / h blocks and the derived subspaces
// k = h, m = a + b, n = b + h.
struct AbhParts {
  SkewTriple a, b, h, k, m, nfrak;
};
AbhParts decompose_abh(const SkewTriple& w);

SkewTriple proj_a(const SkewTriple& w);
SkewTriple proj_b(const SkewTriple& w);
SkewTriple proj_h(const SkewTriple& w);
SkewTriple proj_m(const SkewTriple& w);
SkewTriple proj_n(const SkewTriple& w);

// Horizontal lift (eta | -Y eta^T Yperp) of a tangent vector as an n x n matrix
Mat horizontal_lift(const StiefelFrame& frame, const AmbientVector& eta);

// Weighted-sum-of-squares sectional numerator <R_{w1,w2} w1, P_t w2> for
// w1, w2 in m
double gz_sectional(const DeformParams& params, const SkewTriple& w1,
                    const SkewTriple& w2);

}  // namespace stcurv
