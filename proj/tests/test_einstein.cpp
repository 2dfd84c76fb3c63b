#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stiefelcurv/einstein.hpp"

using namespace stcurv;

TEST_CASE("p=2 closed form") {
  EinsteinSolution sol = einstein_alphas(10, 2);
  REQUIRE(sol.roots.size() == 1);
  CHECK(sol.roots[0] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("p=3 quadratic roots") {
  EinsteinSolution sol = einstein_alphas(4, 3);
  REQUIRE(sol.roots.size() == 2);
  CHECK(sol.roots[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(sol.roots[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("roots satisfy the quadratic residually") {
  for (auto [n, p] : {std::pair{5, 4}, {9, 5}, {12, 7}}) {
    EinsteinSolution sol = einstein_alphas(n, p);
    REQUIRE(sol.roots.size() == 2);
    for (double a : sol.roots) {
      double res = (n - 1.0) * a * a - (n - 2.0) * a + (p - 2.0) / 4.0;
      CHECK(std::abs(res) <= 1e-14);
      CHECK(a > 0.0);
    }
    CHECK(sol.roots[0] <= sol.roots[1]);
  }
}

TEST_CASE("discriminant positive for all shapes up to 50") {
  for (int n = 4; n <= 50; ++n)
    for (int p = 3; p < n; ++p)
      CHECK(einstein_alphas(n, p).discriminant > 0.0);
}

TEST_CASE("ricci-map eigenvalues coincide at roots") {
  for (auto [n, p] : {std::pair{10, 2}, {4, 3}, {5, 4}, {9, 5}}) {
    for (double a : einstein_alphas(n, p).roots)
      CHECK(std::abs(ricci_eigen_a(a, n, p) - ricci_eigen_b(a, n, p)) <= 1e-12);
  }
}

TEST_CASE("verification oracle at and off roots") {
  EinsteinSolution sol = einstein_alphas(6, 2);
  double root = sol.roots[0];
  CHECK(verify_einstein(MetricParams(root), 6, 2, 500) <= 1e-10);
  CHECK(verify_einstein(MetricParams(root + 0.4), 6, 2, 200) > 1e-3);
}

TEST_CASE("precondition errors") {
  CHECK_THROWS_AS(einstein_alphas(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(einstein_alphas(3, 3), std::invalid_argument);
}
