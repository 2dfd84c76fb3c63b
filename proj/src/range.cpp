#include "stiefelcurv/range.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace stcurv {

double frak_c(double alpha, double gamma) {
  double num = 0.5 * alpha + alpha * (4.0 * alpha - 3.0) * gamma +
               0.5 * (2.0 - 3.0 * alpha) * gamma * gamma;
  double den = 2.0 * alpha + gamma;
  return num / (den * den);
}

double gamma_min(double alpha) {
  // stationary point of gamma -> frak_c(alpha, gamma); blows up at alpha=7/10
  return (1.0 + 6.0 * alpha - 8.0 * alpha * alpha) / (7.0 - 10.0 * alpha);
}

bool gamma_min_valid(double alpha) {
  double g = gamma_min(alpha);
  return std::isfinite(g) && g >= 0.0;
}

double frak_l(double alpha) {
  double g = gamma_min(alpha);
  if (!std::isfinite(g)) return 0.5 * (2.0 - 3.0 * alpha);  // removable singularity
  return frak_c(alpha, g);
}

namespace {

// E_ij - E_ji in o(p), 1-based indices
SkewMat skew_pair(int p, int i, int j) {
  Mat m(p, p);
  m(i - 1, j - 1) = 1.0;
  m(j - 1, i - 1) = -1.0;
  return SkewMat::from_skew_part(m);
}

// e_ij in R^{(n-p) x p}, 1-based
Mat unit_b(int n, int p, int i, int j, double v = 1.0) {
  Mat m(n - p, p);
  m(i - 1, j - 1) = v;
  return m;
}

}  // namespace

std::vector<CornerSection> corner_sections(int n, int p) {
  if (p < 2 || p >= n)
    throw std::invalid_argument("corner_sections: requires 2 <= p < n");
  auto always = [](double) { return true; };
  std::vector<CornerSection> all;

  all.push_back({"zero_mixed",
                 [](int nn, int pp) { return pp >= 3 && nn > pp; },
                 always,
                 [](int nn, int pp, double a) {
                   return Section{{skew_pair(pp, 1, 2), unit_b(nn, pp, 1, 3, 2.0)},
                                  {skew_pair(pp, 1, 2), unit_b(nn, pp, 1, 3, -a)}};
                 },
                 [](double) { return 0.0; }});

  all.push_back({"zero_perp",
                 [](int nn, int pp) { return nn - pp >= 2; },
                 always,
                 [](int nn, int pp, double) {
                   return Section{{SkewMat(pp), unit_b(nn, pp, 1, 1)},
                                  {SkewMat(pp), unit_b(nn, pp, 2, 2)}};
                 },
                 [](double) { return 0.0; }});

  all.push_back({"one_perp",
                 [](int nn, int pp) { return nn - pp >= 2; },
                 always,
                 [](int nn, int pp, double) {
                   return Section{{SkewMat(pp), unit_b(nn, pp, 1, 1)},
                                  {SkewMat(pp), unit_b(nn, pp, 2, 1)}};
                 },
                 [](double) { return 1.0; }});

  all.push_back({"recip_2a_plus_1",
                 [](int nn, int pp) { return pp >= 3; },
                 always,
                 [](int nn, int pp, double) {
                   return Section{{skew_pair(pp, 1, 2), unit_b(nn, pp, 1, pp, -1.0)},
                                  {skew_pair(pp, 1, pp), unit_b(nn, pp, 1, 2)}};
                 },
                 [](double a) { return 1.0 / (2.0 * a + 1.0); }});

  all.push_back({"recip_8a",
                 [](int nn, int pp) { return pp >= 3; },
                 always,
                 [](int nn, int pp, double) {
                   return Section{{skew_pair(pp, 1, 2), Mat(nn - pp, pp)},
                                  {skew_pair(pp, 2, 3), Mat(nn - pp, pp)}};
                 },
                 [](double a) { return 1.0 / (8.0 * a); }});

  all.push_back({"recip_4a",
                 [](int nn, int pp) { return pp >= 4; },
                 always,
                 [](int nn, int pp, double) {
                   SkewMat a1 = skew_pair(pp, 1, 2) + skew_pair(pp, pp - 1, pp);
                   SkewMat a2 = skew_pair(pp, 1, pp - 1) - skew_pair(pp, 2, pp);
                   return Section{{a1, Mat(nn - pp, pp)}, {a2, Mat(nn - pp, pp)}};
                 },
                 [](double a) { return 1.0 / (4.0 * a); }});

  all.push_back({"half_alpha",
                 [](int nn, int pp) { return pp >= 2; },
                 always,
                 [](int nn, int pp, double) {
                   return Section{{skew_pair(pp, 1, 2), Mat(nn - pp, pp)},
                                  {SkewMat(pp), unit_b(nn, pp, 1, 1)}};
                 },
                 [](double a) { return 0.5 * a; }});

  all.push_back({"lower_edge",
                 [](int nn, int pp) { return pp >= 2; },
                 always,
                 [](int nn, int pp, double) {
                   return Section{{SkewMat(pp), unit_b(nn, pp, 1, 1)},
                                  {SkewMat(pp), unit_b(nn, pp, 1, 2)}};
                 },
                 [](double a) { return 0.5 * (2.0 - 3.0 * a); }});

  all.push_back({"upper_perp",
                 [](int nn, int pp) { return nn - pp >= 2; },
                 always,
                 [](int nn, int pp, double) {
                   return Section{
                       {SkewMat(pp), unit_b(nn, pp, 1, 1) + unit_b(nn, pp, 2, 2)},
                       {SkewMat(pp), unit_b(nn, pp, 1, 2) - unit_b(nn, pp, 2, 1)}};
                 },
                 [](double a) { return 0.5 * (4.0 - 3.0 * a); }});

  all.push_back({"l_curve",
                 [](int nn, int pp) { return pp >= 3; },
                 [](double a) { return gamma_min_valid(a); },
                 [](int nn, int pp, double a) {
                   double s = std::sqrt(gamma_min(a));
                   return Section{{skew_pair(pp, 1, 2), unit_b(nn, pp, 1, 1, s)},
                                  {skew_pair(pp, 2, 3), unit_b(nn, pp, 1, 3, s)}};
                 },
                 [](double a) { return frak_l(a); }});

  std::vector<CornerSection> out;
  for (auto& c : all)
    if (c.shape_ok(n, p)) out.push_back(c);
  return out;
}

Interval p2_range(int n, double alpha) {
  if (n < 3) throw std::invalid_argument("p2_range: requires n >= 3");
  if (!(alpha > 0.0)) throw std::invalid_argument("p2_range: alpha must be positive");
  double half_a = 0.5 * alpha, low = 0.5 * (2.0 - 3.0 * alpha);
  if (n == 3) return {std::min(half_a, low), std::max(half_a, low)};
  if (alpha <= 2.0 / 3.0) return {0.0, 0.5 * (4.0 - 3.0 * alpha)};
  if (alpha <= 2.0) return {low, 1.0};
  return {low, half_a};
}

Interval interval_table(int n, int p, double alpha) {
  if (p < 2 || p >= n)
    throw std::invalid_argument("interval_table: requires 2 <= p < n");
  if (!(alpha > 0.0))
    throw std::invalid_argument("interval_table: alpha must be positive");
  if (p == 2) return p2_range(n, alpha);

  const double a = alpha;
  const double low = 0.5 * (2.0 - 3.0 * a);
  const double recip_2a1 = 1.0 / (1.0 + 2.0 * a);
  const double au_star = 0.25 * (std::sqrt(17.0) - 1.0);

  if (n == 4 && p == 3) {
    if (a <= 1.0 / 6.0) return {0.0, 1.0 / (8.0 * a)};
    if (a <= 0.5) return {0.0, recip_2a1};
    if (a <= 0.7) return {frak_l(a), recip_2a1};
    if (a <= au_star) return {low, recip_2a1};
    return {low, 0.5 * a};
  }
  if (p == n - 1) {  // n >= 5 here
    if (a <= 0.5) return {0.0, 1.0 / (4.0 * a)};
    if (a <= 0.7) return {frak_l(a), recip_2a1};
    if (a <= au_star) return {low, recip_2a1};
    return {low, 0.5 * a};
  }
  // n - p >= 2 from here on
  if (p == 3) {
    if (a <= (4.0 - std::sqrt(13.0)) / 6.0) return {0.0, 1.0 / (8.0 * a)};
  } else {
    if (a <= (4.0 - std::sqrt(10.0)) / 6.0) return {0.0, 1.0 / (4.0 * a)};
  }
  if (a <= 0.5) return {0.0, 0.5 * (4.0 - 3.0 * a)};
  if (a <= 2.0 / 3.0) return {frak_l(a), 0.5 * (4.0 - 3.0 * a)};
  if (a <= 0.7) return {frak_l(a), 1.0};
  if (a <= 2.0) return {low, 1.0};
  return {low, 0.5 * a};
}

std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const NelderMeadOptions& opts) {
  const size_t d = x0.size();
  std::vector<std::vector<double>> v(d + 1, x0);
  for (size_t i = 0; i < d; ++i) v[i + 1][i] += opts.initial_step;
  std::vector<double> fv(d + 1);
  for (size_t i = 0; i <= d; ++i) fv[i] = f(v[i]);

  std::vector<size_t> ord(d + 1);
  auto sort_simplex = [&] {
    for (size_t i = 0; i <= d; ++i) ord[i] = i;
    std::stable_sort(ord.begin(), ord.end(),
                     [&](size_t a, size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> v2(d + 1);
    std::vector<double> f2(d + 1);
    for (size_t i = 0; i <= d; ++i) {
      v2[i] = std::move(v[ord[i]]);
      f2[i] = fv[ord[i]];
    }
    v = std::move(v2);
    fv = std::move(f2);
  };

  auto affine = [&](const std::vector<double>& c, const std::vector<double>& w,
                    double coef) {
    std::vector<double> x(d);
    for (size_t i = 0; i < d; ++i) x[i] = c[i] + coef * (c[i] - w[i]);
    return x;
  };

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    sort_simplex();
    double diam = 0.0;
    for (size_t j = 1; j <= d; ++j)
      for (size_t i = 0; i < d; ++i)
        diam = std::max(diam, std::abs(v[j][i] - v[0][i]));
    if (diam < opts.diameter_tol) break;

    std::vector<double> c(d, 0.0);
    for (size_t j = 0; j < d; ++j)
      for (size_t i = 0; i < d; ++i) c[i] += v[j][i] / double(d);

    std::vector<double> xr = affine(c, v[d], 1.0);
    double fr = f(xr);
    if (fr < fv[0]) {
      std::vector<double> xe = affine(c, v[d], 2.0);
      double fe = f(xe);
      if (fe < fr) {
        v[d] = std::move(xe);
        fv[d] = fe;
      } else {
        v[d] = std::move(xr);
        fv[d] = fr;
      }
      continue;
    }
    if (fr < fv[d - 1]) {
      v[d] = std::move(xr);
      fv[d] = fr;
      continue;
    }
    bool shrink = false;
    if (fr < fv[d]) {  // outside contraction
      std::vector<double> xc = affine(c, v[d], 0.5);
      double fc = f(xc);
      if (fc <= fr) {
        v[d] = std::move(xc);
        fv[d] = fc;
      } else {
        shrink = true;
      }
    } else {  // inside contraction
      std::vector<double> xc = affine(c, v[d], -0.5);
      double fc = f(xc);
      if (fc < fv[d]) {
        v[d] = std::move(xc);
        fv[d] = fc;
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (size_t j = 1; j <= d; ++j) {
        for (size_t i = 0; i < d; ++i) v[j][i] = v[0][i] + 0.5 * (v[j][i] - v[0][i]);
        fv[j] = f(v[j]);
      }
    }
  }
  sort_simplex();
  return {v[0], fv[0]};
}

namespace {

constexpr double kPenalty = 1e6;
constexpr double kWedgeFloor = 1e-8;

size_t section_dim(int n, int p) {
  return 2 * (SkewMat::lower_size(p) + size_t(n - p) * p);
}

std::vector<double> pack_section(const Section& s) {
  std::vector<double> x;
  x.reserve(section_dim(s.xi.n(), s.xi.p()));
  auto push_tc = [&](const TangentCoords& t) {
    x.insert(x.end(), t.A.lower().begin(), t.A.lower().end());
    x.insert(x.end(), t.B.data().begin(), t.B.data().end());
  };
  push_tc(s.xi);
  push_tc(s.eta);
  return x;
}

Section unpack_section(int n, int p, const std::vector<double>& x) {
  const size_t la = SkewMat::lower_size(p);
  const size_t lb = size_t(n - p) * p;
  auto take_tc = [&](size_t off) {
    SkewMat A = SkewMat::from_lower(
        p, std::vector<double>(x.begin() + off, x.begin() + off + la));
    Mat B(n - p, p,
          std::vector<double>(x.begin() + off + la, x.begin() + off + la + lb));
    return TangentCoords{A, B};
  };
  return {take_tc(0), take_tc(la + lb)};
}

TangentCoords scale_tc(double s, const TangentCoords& t) {
  return {s * t.A, s * t.B};
}

}  // namespace

RangeReport optimize_range(int n, int p, double alpha, int restarts, uint64_t seed) {
  if (p < 2 || p >= n)
    throw std::invalid_argument("optimize_range: requires 2 <= p < n");
  if (restarts < 1) throw std::invalid_argument("optimize_range: restarts must be >= 1");
  MetricParams params(alpha);
  const size_t dim = section_dim(n, p);

  auto objective = [&](double sign) {
    return [&, sign](const std::vector<double>& x) -> double {
      for (double xi : x)
        if (!std::isfinite(xi)) return kPenalty;
      Section s = unpack_section(n, p, x);
      double nx = std::sqrt(metric_inner(params, s.xi, s.xi));
      double ny = std::sqrt(metric_inner(params, s.eta, s.eta));
      if (nx < 1e-12 || ny < 1e-12) return kPenalty;
      TangentCoords u = scale_tc(1.0 / nx, s.xi), w = scale_tc(1.0 / ny, s.eta);
      double cross = metric_inner(params, u, w);
      double wedge = 1.0 - cross * cross;
      if (wedge < kWedgeFloor) return kPenalty;
      double num = sectional_numerator(params, u, w, NumeratorForm::SumSq);
      double val = sign * num / wedge;
      return std::isfinite(val) ? val : kPenalty;
    };
  };

  std::optional<SectionEval> best_min, best_max;
  auto consider = [&](const Section& s) {
    double nx = std::sqrt(metric_inner(params, s.xi, s.xi));
    double ny = std::sqrt(metric_inner(params, s.eta, s.eta));
    if (nx < 1e-12 || ny < 1e-12) return;
    SectionEval ev =
        sectional(params, scale_tc(1.0 / nx, s.xi), scale_tc(1.0 / ny, s.eta));
    if (!ev.kappa_defined || !std::isfinite(ev.kappa)) return;
    if (!best_min || ev.kappa < best_min->kappa) best_min = ev;
    if (!best_max || ev.kappa > best_max->kappa) best_max = ev;
  };

  std::vector<std::vector<double>> starts;
  for (const auto& c : corner_sections(n, p)) {
    if (!c.alpha_ok(alpha)) continue;
    Section s = c.build(n, p, alpha);
    consider(s);  // closed-form corner, exact warm-start point
    starts.push_back(pack_section(s));
  }
  for (int r = 0; r < restarts; ++r) {
    Rng rng(seed + uint64_t(r));
    std::vector<double> x(dim);
    for (auto& xi : x) xi = rng.normal();
    starts.push_back(std::move(x));
  }

  auto fmin = objective(1.0), fmax = objective(-1.0);
  for (const auto& x0 : starts) {
    for (int sgn = 0; sgn < 2; ++sgn) {
      auto [xb, fb] = nelder_mead(sgn == 0 ? fmin : fmax, x0);
      if (fb >= kPenalty) continue;
      consider(unpack_section(n, p, xb));
    }
  }
  if (!best_min || !best_max)
    throw std::runtime_error("optimize_range: no nondegenerate section found");

  return RangeReport{n,         p,         alpha, best_min->kappa, best_max->kappa,
                     *best_min, *best_max, restarts, seed};
}

std::vector<SweepRow> sweep(int n, int p, const std::vector<double>& alpha_grid,
                            int restarts, uint64_t seed) {
  const size_t m = alpha_grid.size();
  std::vector<std::optional<SweepRow>> rows(m);

  auto work = [&](size_t i) {
    double a = alpha_grid[i];
    uint64_t row_seed = seed + 1000003ull * uint64_t(i);
    RangeReport rep = optimize_range(n, p, a, restarts, row_seed);
    Interval iv = interval_table(n, p, a);
    const double tol = 1e-3;  // optimizer accuracy, not formula accuracy
    bool ok = iv.lo >= rep.kappa_min - tol && iv.hi <= rep.kappa_max + tol;
    std::vector<std::pair<std::string, double>> corners;
    for (const auto& c : corner_sections(n, p))
      if (c.alpha_ok(a)) corners.emplace_back(c.label, c.kappa_formula(a));
    rows[i] = SweepRow{a, std::move(rep), iv, ok, std::move(corners), std::nullopt};
  };

  unsigned threads = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("STIEFEL_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) threads = unsigned(v);
  }
  threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<size_t>(m, 1))));

  if (threads <= 1 || m <= 1) {
    for (size_t i = 0; i < m; ++i) work(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < m; i = next.fetch_add(1)) work(i);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<SweepRow> out;
  out.reserve(m);
  for (auto& r : rows) out.push_back(std::move(*r));
  return out;
}

namespace {
std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  // union of corner labels across the grid, in first-seen (canonical) order
  std::vector<std::string> labels;
  for (const auto& r : rows)
    for (const auto& [lab, _] : r.corners)
      if (std::find(labels.begin(), labels.end(), lab) == labels.end())
        labels.push_back(lab);

  std::string out = "alpha,kappa_min,kappa_max,interval_lo,interval_hi,containment";
  for (const auto& lab : labels) out += ",corner_" + lab;
  out += "\n";
  for (const auto& r : rows) {
    out += fmt_g17(r.alpha) + "," + fmt_g17(r.report.kappa_min) + "," +
           fmt_g17(r.report.kappa_max) + "," + fmt_g17(r.interval.lo) + "," +
           fmt_g17(r.interval.hi) + "," + (r.containment_ok ? "true" : "false");
    for (const auto& lab : labels) {
      out += ",";
      for (const auto& [l2, v] : r.corners)
        if (l2 == lab) {
          out += fmt_g17(v);
          break;
        }
    }
    out += "\n";
  }
  return out;
}

}  // namespace stcurv
