#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stiefelcurv/stiefel.hpp"

using namespace stcurv;

TEST_CASE("complete_frame produces an orthonormal complement") {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 3 + trial % 5, p = 1 + trial % (n - 1);
    StiefelFrame f = random_frame(rng, n, p);
    Mat u(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < p; ++j) u(i, j) = f.Y(i, j);
      for (int j = 0; j < n - p; ++j) u(i, p + j) = f.Yperp(i, j);
    }
    CHECK(frobenius(transpose(u) * u - Mat::identity(n)) < 1e-12);
  }
}

TEST_CASE("frame constructor rejects bad input") {
  Mat y(4, 2);
  y(0, 0) = 1.0;
  y(1, 1) = 2.0;  // not orthonormal
  CHECK_THROWS_AS(complete_frame(y), std::invalid_argument);
}

TEST_CASE("coords round trip") {
  Rng rng(2);
  StiefelFrame f = random_frame(rng, 6, 3);
  TangentCoords x = random_tangent(rng, 6, 3);
  AmbientVector w = from_coords(f, x);
  TangentCoords back = project_tangent(f, w);
  CHECK(frobenius(back.A.full() - x.A.full()) < 1e-12);
  CHECK(frobenius(back.B - x.B) < 1e-12);
  CHECK(tangency_residual(f, w) < 1e-12);
}

TEST_CASE("projection kills the symmetric part") {
  Rng rng(3);
  StiefelFrame f = random_frame(rng, 5, 2);
  Mat w = random_mat(rng, 5, 2);
  TangentCoords x = project_tangent(f, w);
  CHECK(tangency_residual(f, from_coords(f, x)) < 1e-12);
}

TEST_CASE("metric inner product vs ambient metric operator") {
  Rng rng(4);
  for (double alpha : {0.25, 0.5, 1.0, 1.7}) {
    MetricParams params(alpha);
    StiefelFrame f = random_frame(rng, 6, 3);
    TangentCoords x = random_tangent(rng, 6, 3), y = random_tangent(rng, 6, 3);
    AmbientVector wx = from_coords(f, x), wy = from_coords(f, y);
    double via_op = inner_frob(wx, metric_operator(params, f, wy));
    CHECK(std::abs(via_op - metric_inner(params, x, y)) < 1e-12);
  }
  // embedded metric (alpha = 1) reduces to the Frobenius inner product
  MetricParams emb(1.0);
  StiefelFrame f = random_frame(rng, 5, 2);
  TangentCoords x = random_tangent(rng, 5, 2), y = random_tangent(rng, 5, 2);
  CHECK(std::abs(metric_inner(emb, x, y) -
                 inner_frob(from_coords(f, x), from_coords(f, y))) < 1e-12);
}

TEST_CASE("christoffel function is symmetric and metric-compatible shape") {
  Rng rng(5);
  MetricParams params(0.75);
  StiefelFrame f = random_frame(rng, 5, 3);
  AmbientVector w1 = from_coords(f, random_tangent(rng, 5, 3));
  AmbientVector w2 = from_coords(f, random_tangent(rng, 5, 3));
  Mat g12 = christoffel(params, f, w1, w2);
  Mat g21 = christoffel(params, f, w2, w1);
  CHECK(frobenius(g12 - g21) < 1e-13);
}

TEST_CASE("polar retraction stays on the manifold") {
  Rng rng(6);
  StiefelFrame f = random_frame(rng, 6, 2);
  TangentCoords x = random_tangent(rng, 6, 2);
  for (double s : {1e-4, 1e-2, 0.5}) {
    StiefelFrame g = retract_polar(f, x, s);
    CHECK(frobenius(transpose(g.Y) * g.Y - Mat::identity(2)) < 1e-12);
  }
  // first order: Y(s) = Y + s xi + O(s^2)
  double s = 1e-5;
  StiefelFrame g = retract_polar(f, x, s);
  CHECK(frobenius(g.Y - (f.Y + s * from_coords(f, x))) < 1e-9);
}

TEST_CASE("random helpers are deterministic in the seed") {
  Rng a(77), b(77);
  StiefelFrame fa = random_frame(a, 5, 3), fb = random_frame(b, 5, 3);
  CHECK(frobenius(fa.Y - fb.Y) == 0.0);
  CHECK(frobenius(fa.Yperp - fb.Yperp) == 0.0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(MetricParams(0.0), std::invalid_argument);
  CHECK_THROWS_AS(MetricParams(-1.0), std::invalid_argument);
  CHECK(MetricParams(0.5).t() == doctest::Approx(1.0));
}
