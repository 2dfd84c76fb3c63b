#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "stiefelcurv/range.hpp"

using namespace stcurv;

TEST_CASE("l-curve special values") {
  CHECK(std::abs(frak_l(0.5)) <= 1e-12);
  CHECK(frak_l(0.7) == doctest::Approx(-0.05).epsilon(1e-12));
  double l23 = frak_l(2.0 / 3.0);
  CHECK(l23 > -0.03);
  CHECK(l23 < -0.01);
  CHECK(gamma_min(0.5) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gamma_min validity window") {
  CHECK(gamma_min_valid(0.5));
  CHECK(gamma_min_valid(0.69));
  CHECK(!gamma_min_valid(0.75));  // negative minimizer, no real section
  double upper = (3.0 + std::sqrt(17.0)) / 8.0;
  CHECK(!gamma_min_valid(upper - 1e-3));
  CHECK(gamma_min_valid(upper + 1e-3));
}

TEST_CASE("l-curve is decreasing and negative past one half") {
  double prev = frak_l(0.51);
  for (double a = 0.52; a < 0.699; a += 0.01) {
    double cur = frak_l(a);
    CHECK(cur < prev);
    CHECK(cur < 0.0);
    prev = cur;
  }
}

TEST_CASE("corner section applicability") {
  std::set<std::string> labels43;
  for (const auto& c : corner_sections(4, 3)) labels43.insert(c.label);
  CHECK(labels43 == std::set<std::string>{"zero_mixed", "recip_2a_plus_1",
                                          "recip_8a", "half_alpha", "lower_edge",
                                          "l_curve"});
  for (const auto& c : corner_sections(5, 2))
    CHECK((c.label != "recip_8a" && c.label != "recip_2a_plus_1" &&
           c.label != "recip_4a" && c.label != "zero_mixed" && c.label != "l_curve"));
  CHECK_THROWS_AS(corner_sections(4, 4), std::invalid_argument);
}

TEST_CASE("corner sections evaluate to their closed forms") {
  for (double a : {0.3, 0.5, 1.0, 2.0}) {
    MetricParams params(a);
    for (auto [n, p] : {std::pair{4, 3}, {6, 4}, {6, 2}}) {
      for (const auto& c : corner_sections(n, p)) {
        if (!c.alpha_ok(a)) continue;
        Section s = c.build(n, p, a);
        SectionEval ev = sectional(params, s.xi, s.eta);
        REQUIRE(ev.kappa_defined);
        CHECK(std::abs(ev.kappa - c.kappa_formula(a)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("p=2 ranges") {
  Interval i1 = p2_range(3, 0.5);
  CHECK(i1.lo == doctest::Approx(0.25));
  CHECK(i1.hi == doctest::Approx(0.25));
  Interval i2 = p2_range(5, 1.0);
  CHECK(i2.lo == doctest::Approx(-0.5));
  CHECK(i2.hi == doctest::Approx(1.0));
  Interval i3 = p2_range(5, 0.5);
  CHECK(i3.lo == doctest::Approx(0.0));
  CHECK(i3.hi == doctest::Approx(1.25));
  CHECK_THROWS_AS(p2_range(2, 1.0), std::invalid_argument);
}

TEST_CASE("interval table examples") {
  Interval a = interval_table(4, 3, 1.5);  // past the last breakpoint
  CHECK(a.lo == doctest::Approx(0.5 * (2.0 - 4.5)));
  CHECK(a.hi == doctest::Approx(0.75));
  Interval b = interval_table(6, 4, 1.0);
  CHECK(b.lo == doctest::Approx(-0.5));
  CHECK(b.hi == doctest::Approx(1.0));
  Interval c = interval_table(6, 4, 0.5);
  CHECK(c.lo == doctest::Approx(0.0));
  CHECK(c.hi == doctest::Approx(1.25));
  for (int n = 3; n <= 8; ++n)
    for (int p = 2; p < n; ++p)
      for (double al : {0.1, 0.4, 0.55, 0.68, 0.8, 1.0, 2.5}) {
        Interval iv = interval_table(n, p, al);
        CHECK(iv.lo <= iv.hi + 1e-15);
      }
}

TEST_CASE("nelder-mead minimizes a shifted quadratic") {
  auto f = [](const std::vector<double>& x) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
      double d = x[i] - double(i + 1);
      s += (i + 1) * d * d;
    }
    return s;
  };
  auto [x, fx] = nelder_mead(f, std::vector<double>(4, 0.0));
  CHECK(fx < 1e-15);
  for (size_t i = 0; i < 4; ++i) CHECK(x[i] == doctest::Approx(double(i + 1)));
}

TEST_CASE("optimizer hits the known p=2 endpoints") {
  RangeReport r = optimize_range(5, 2, 1.0, 10, 42);
  CHECK(r.kappa_min == doctest::Approx(-0.5).epsilon(1e-3));
  CHECK(r.kappa_max == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.kappa_min <= r.kappa_max);
  // stored sections re-evaluate to the reported values
  MetricParams params(1.0);
  SectionEval re = sectional(params, r.argmin.xi, r.argmin.eta);
  CHECK(std::abs(re.kappa - r.kappa_min) <= 1e-10);
  CHECK_THROWS_AS(optimize_range(5, 2, 1.0, 0, 1), std::invalid_argument);
}

TEST_CASE("optimizer range dominates every corner value") {
  for (double a : {0.4, 1.0, 1.8}) {
    RangeReport r = optimize_range(6, 3, a, 5, 11);
    for (const auto& c : corner_sections(6, 3)) {
      if (!c.alpha_ok(a)) continue;
      double v = c.kappa_formula(a);
      CHECK(r.kappa_min <= v + 1e-6);
      CHECK(r.kappa_max >= v - 1e-6);
    }
  }
}

TEST_CASE("optimizer is deterministic in the seed") {
  RangeReport a = optimize_range(4, 3, 0.9, 6, 123);
  RangeReport b = optimize_range(4, 3, 0.9, 6, 123);
  CHECK(a.kappa_min == b.kappa_min);
  CHECK(a.kappa_max == b.kappa_max);
}

TEST_CASE("sweep of one point reduces to optimize_range") {
  auto rows = sweep(4, 3, {1.0}, 5, 99);
  REQUIRE(rows.size() == 1);
  RangeReport direct = optimize_range(4, 3, 1.0, 5, 99 + 0 * 1000003ull);
  CHECK(rows[0].report.kappa_min == direct.kappa_min);
  CHECK(rows[0].report.kappa_max == direct.kappa_max);
  CHECK(rows[0].containment_ok);
}

TEST_CASE("sweep csv shape and determinism") {
  std::vector<double> grid = {0.3, 0.8, 1.4};
  std::string csv1 = sweep_csv(sweep(4, 3, grid, 4, 5));
  std::string csv2 = sweep_csv(sweep(4, 3, grid, 4, 5));
  CHECK(csv1 == csv2);
  CHECK(csv1.substr(0, 5) == "alpha");
  CHECK(std::count(csv1.begin(), csv1.end(), '\n') == 4);  // header + 3 rows
}
