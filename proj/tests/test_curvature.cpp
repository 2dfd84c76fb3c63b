#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stiefelcurv/curvature.hpp"

using namespace stcurv;

static TangentCoords b_only(int n, int p, int i, int j, double v = 1.0) {
  Mat b(n - p, p);
  b(i, j) = v;
  return {SkewMat(p), b};
}

TEST_CASE("ricci closed form on simple sections") {
  // n=5, p=2, alpha=1, B1=B2=e11: only the B term contributes,
  // ((1-p)a + n-2) = 2
  MetricParams params(1.0);
  TangentCoords x = b_only(5, 2, 0, 0);
  CHECK(ricci(params, 5, 2, x, x) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(ricci(params, 5, 1, b_only(5, 1, 0, 0), b_only(5, 1, 0, 0)),
                  std::invalid_argument);
}

TEST_CASE("scalar curvature closed form") {
  MetricParams params(1.0);
  CHECK(scalar_curvature(params, 4, 2) == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("numerator forms agree") {
  Rng rng(11);
  for (double alpha : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    MetricParams params(alpha);
    for (int trial = 0; trial < 20; ++trial) {
      int n = 4 + trial % 3, p = 2 + trial % (n - 2);
      TangentCoords x = random_tangent(rng, n, p), y = random_tangent(rng, n, p);
      double tf = sectional_numerator(params, x, y, NumeratorForm::TraceForm);
      double ss = sectional_numerator(params, x, y, NumeratorForm::SumSq);
      CHECK(tf == doctest::Approx(ss).epsilon(1e-10));
    }
  }
}

TEST_CASE("third numerator form when an A block vanishes") {
  Rng rng(12);
  MetricParams params(0.8);
  for (int trial = 0; trial < 10; ++trial) {
    TangentCoords x(SkewMat(3), random_mat(rng, 3, 3));  // A1 = 0
    TangentCoords y = random_tangent(rng, 6, 3);
    double ss = sectional_numerator(params, x, y, NumeratorForm::SumSq);
    double ss2 = sectional_numerator(params, x, y, NumeratorForm::SumSq2);
    CHECK(ss == doctest::Approx(ss2).epsilon(1e-10));
  }
}

TEST_CASE("degenerate section flagged") {
  MetricParams params(1.0);
  TangentCoords x = b_only(5, 2, 0, 0);
  SectionEval ev = sectional(params, x, x);
  CHECK(!ev.kappa_defined);
  CHECK(std::isnan(ev.kappa));
  CHECK(ev.wedge < 1e-10);
}

TEST_CASE("sectional value of an easy perpendicular section") {
  // B1 = e11, B2 = e21 spans a curvature-one section for any alpha
  for (double alpha : {0.3, 1.0, 2.5}) {
    MetricParams params(alpha);
    SectionEval ev = sectional(params, b_only(6, 2, 0, 0), b_only(6, 2, 1, 0));
    CHECK(ev.kappa == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("coordinate and ambient paths agree") {
  Rng rng(13);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 4 + trial % 3, p = 2 + trial % (n - 2);
    MetricParams params(0.3 + 0.4 * (trial % 4));
    StiefelFrame f = random_frame(rng, n, p);
    TangentCoords x = random_tangent(rng, n, p), y = random_tangent(rng, n, p),
                  z = random_tangent(rng, n, p);
    CurvatureCoords cc = curvature_coords(params, x, y, z);
    Mat r_coord = from_coords(f, {cc.A_R, cc.B_R});
    Mat r_amb = curvature_ambient_analytic(params, f, from_coords(f, x),
                                           from_coords(f, y), from_coords(f, z));
    Mat r_amb2 = curvature_ambient_analytic2(params, f, from_coords(f, x),
                                             from_coords(f, y), from_coords(f, z));
    CHECK(frobenius(r_coord - r_amb) < 1e-10);
    CHECK(frobenius(r_amb - r_amb2) < 1e-10);
    Mat r_fd = curvature_ambient_fd(params, f, from_coords(f, x), from_coords(f, y),
                                    from_coords(f, z), 1e-4);
    CHECK(frobenius(r_coord - r_fd) < 1e-5);
  }
}

TEST_CASE("finite-difference step validation") {
  Rng rng(14);
  MetricParams params(1.0);
  StiefelFrame f = random_frame(rng, 4, 2);
  Mat w = from_coords(f, random_tangent(rng, 4, 2));
  CHECK_THROWS_AS(curvature_ambient_fd(params, f, w, w, w, 1e-8),
                  std::invalid_argument);
  CHECK_THROWS_AS(curvature_ambient_fd(params, f, w, w, w, 0.5),
                  std::invalid_argument);
}

TEST_CASE("ambient path rejects non-tangent input") {
  Rng rng(15);
  MetricParams params(1.0);
  StiefelFrame f = random_frame(rng, 4, 2);
  Mat w = random_mat(rng, 4, 2);  // generic, not tangent
  Mat t = from_coords(f, random_tangent(rng, 4, 2));
  CHECK_THROWS_AS(curvature_ambient_analytic(params, f, w, t, t),
                  std::invalid_argument);
}

TEST_CASE("quad form matches numerator") {
  Rng rng(16);
  MetricParams params(1.3);
  TangentCoords x = random_tangent(rng, 5, 2), y = random_tangent(rng, 5, 2);
  double num = sectional_numerator(params, x, y, NumeratorForm::TraceForm);
  CHECK(curvature_quad(params, x, y, x, y) == doctest::Approx(num).epsilon(1e-12));
}
