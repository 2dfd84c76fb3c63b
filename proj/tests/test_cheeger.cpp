#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stiefelcurv/cheeger.hpp"

using namespace stcurv;

static SkewTriple rand_triple(Rng& rng, int n, int p) {
  return SkewTriple(random_skew(rng, p), random_mat(rng, n - p, p),
                    random_skew(rng, n - p));
}

TEST_CASE("assemble/split round trip") {
  Rng rng(21);
  SkewTriple w = rand_triple(rng, 7, 3);
  Mat m = w.assemble();
  CHECK(frobenius(m + transpose(m)) == 0.0);  // exactly antisymmetric
  SkewTriple back = split_skew(m, 3);
  CHECK(frobenius((w - back).assemble()) == 0.0);
}

TEST_CASE("triple bracket matches matrix commutator") {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4 + trial % 4, p = 2 + trial % (n - 1);
    if (p >= n) continue;
    SkewTriple w1 = rand_triple(rng, n, p), w2 = rand_triple(rng, n, p);
    Mat lhs = bracket(w1, w2).assemble();
    Mat rhs = commutator(w1.assemble(), w2.assemble());
    CHECK(frobenius(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("bi-invariant inner product and Pt") {
  Rng rng(23);
  SkewTriple w1 = rand_triple(rng, 6, 2), w2 = rand_triple(rng, 6, 2);
  CHECK(biinvariant_inner(w1, w2) ==
        doctest::Approx(0.5 * inner_frob(w1.assemble(), w2.assemble()))
            .epsilon(1e-13));
  DeformParams dp(1.7);
  CHECK(deformed_inner(dp, w1, w2) ==
        doctest::Approx(biinvariant_inner(w1, apply_Pt(dp, w2))).epsilon(1e-13));
  SkewTriple id = apply_Pt_inv(dp, apply_Pt(dp, w1));
  CHECK(frobenius((id - w1).assemble()) < 1e-13);
  CHECK_THROWS_AS(DeformParams(0.0), std::invalid_argument);
}

TEST_CASE("ad-dagger is the metric adjoint of ad") {
  Rng rng(24);
  for (double t : {0.5, 1.0, 2.0, 3.3}) {
    DeformParams dp(t);
    SkewTriple a = rand_triple(rng, 6, 3), x = rand_triple(rng, 6, 3),
               y = rand_triple(rng, 6, 3);
    double lhs = deformed_inner(dp, bracket(a, x), y);
    double rhs = deformed_inner(dp, x, ad_dagger(dp, a, y));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    // operator identity ad^+_a = -P^{-1} ad_a P
    SkewTriple direct = ad_dagger(dp, a, y);
    SkewTriple op = apply_Pt_inv(dp, bracket(a, apply_Pt(dp, y)));
    CHECK(frobenius((direct + op).assemble()) < 1e-11);
  }
}

TEST_CASE("metric bracket reduces to the plain bracket at t=1") {
  Rng rng(25);
  DeformParams dp(1.0);
  SkewTriple w1 = rand_triple(rng, 5, 2), w2 = rand_triple(rng, 5, 2);
  CHECK(frobenius((bracket_P(dp, w1, w2) - bracket(w1, w2)).assemble()) < 1e-13);
}

TEST_CASE("projections decompose the algebra") {
  Rng rng(26);
  SkewTriple w = rand_triple(rng, 7, 4);
  AbhParts parts = decompose_abh(w);
  CHECK(frobenius((parts.a + parts.b + parts.h - w).assemble()) == 0.0);
  CHECK(frobenius((parts.m + parts.k - w).assemble()) == 0.0);
  CHECK(frobenius((parts.a + parts.nfrak - w).assemble()) == 0.0);
  CHECK(biinvariant_inner(parts.a, parts.b) == 0.0);
  CHECK(biinvariant_inner(parts.m, parts.k) == 0.0);
}

TEST_CASE("group and homogeneous curvature agree when the bracket stays in m") {
  // with w_i in m and [w1,w2]_k = 0, the lift correction vanishes
  Rng rng(27);
  DeformParams dp(1.4);
  int n = 5, p = 2;
  SkewTriple w1(random_skew(rng, p), Mat(n - p, p), SkewMat(n - p));
  SkewTriple w2(random_skew(rng, p), Mat(n - p, p), SkewMat(n - p));
  SkewTriple w3(random_skew(rng, p), Mat(n - p, p), SkewMat(n - p));
  // A-only triples: bracket has A-block only, so no k component
  Mat diff = (group_curvature(dp, w1, w2, w3) - hom_curvature(dp, w1, w2, w3)).assemble();
  CHECK(frobenius(diff) < 1e-12);
}

TEST_CASE("curvature splits into powers of (1-t)") {
  Rng rng(28);
  int n = 6, p = 3;
  SkewTriple w1(random_skew(rng, p), random_mat(rng, n - p, p), SkewMat(n - p));
  SkewTriple w2(random_skew(rng, p), random_mat(rng, n - p, p), SkewMat(n - p));
  SkewTriple w3(random_skew(rng, p), random_mat(rng, n - p, p), SkewMat(n - p));
  PtCurvatureSplit s = curvature_Pt_decomposed(w1, w2, w3);
  for (double t : {0.6, 1.0, 1.9}) {
    double u = 1.0 - t;
    Mat pred = (s.R0 + u * s.R1 + (u * u) * s.R2).assemble();
    Mat direct = hom_curvature(DeformParams(t), w1, w2, w3).assemble();
    CHECK(frobenius(pred - direct) < 1e-11);
  }
}

TEST_CASE("horizontal lift matches the block triple") {
  Rng rng(29);
  int n = 6, p = 2;
  StiefelFrame f = random_frame(rng, n, p);
  TangentCoords x = random_tangent(rng, n, p);
  AmbientVector eta = from_coords(f, x);
  Mat lift = horizontal_lift(f, eta);
  // U^T lift has blocks [[A, -B^T],[B, 0]]
  Mat u(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) u(i, j) = f.Y(i, j);
    for (int j = 0; j < n - p; ++j) u(i, p + j) = f.Yperp(i, j);
  }
  Mat w = transpose(u) * lift;
  Mat expected = SkewTriple::from_tangent(x).assemble();
  CHECK(frobenius(w - expected) < 1e-11);
}

TEST_CASE("deformed metric on lifts matches the tangent metric") {
  Rng rng(30);
  int n = 5, p = 2;
  double alpha = 0.8;
  DeformParams dp(2.0 * alpha);
  MetricParams mp(alpha);
  TangentCoords x = random_tangent(rng, n, p), y = random_tangent(rng, n, p);
  double lie = deformed_inner(dp, SkewTriple::from_tangent(x),
                              SkewTriple::from_tangent(y));
  CHECK(lie == doctest::Approx(metric_inner(mp, x, y)).epsilon(1e-12));
}

TEST_CASE("weighted-sum sectional formula matches the curvature numerator") {
  Rng rng(31);
  for (double t : {0.4, 1.0, 1.6, 2.8}) {
    DeformParams dp(t);
    int n = 6, p = 3;
    SkewTriple w1(random_skew(rng, p), random_mat(rng, n - p, p), SkewMat(n - p));
    SkewTriple w2(random_skew(rng, p), random_mat(rng, n - p, p), SkewMat(n - p));
    double gz = gz_sectional(dp, w1, w2);
    double num = deformed_inner(dp, hom_curvature(dp, w1, w2, w1), w2);
    CHECK(gz == doctest::Approx(num).epsilon(1e-10));
  }
}
