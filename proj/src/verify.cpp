#include "stiefelcurv/verify.hpp"

#include <algorithm>
#include <cmath>

namespace stcurv {

namespace {

double rel_dev(const Mat& a, const Mat& b) {
  return frobenius(a - b) / std::max({1.0, frobenius(a), frobenius(b)});
}

TangentCoords unit_tangent(const MetricParams& params, Rng& rng, int n, int p) {
  TangentCoords x = random_tangent(rng, n, p);
  double nrm = std::sqrt(metric_inner(params, x, x));
  return {(1.0 / nrm) * x.A, (1.0 / nrm) * x.B};
}

struct Instance {
  int n, p;
  MetricParams params;
  StiefelFrame frame;
  TangentCoords x1, x2, x3;
};

Instance make_instance(Rng& rng, int n_max) {
  static const double kAlphas[] = {0.25, 0.5, 1.0, 1.5, 2.0};
  int n = 3 + int(rng.uniform() * double(n_max - 2));
  n = std::min(n, n_max);
  int p = 2 + int(rng.uniform() * double(n - 2));
  p = std::min(p, n - 1);
  MetricParams params(kAlphas[int(rng.uniform() * 5.0) % 5]);
  StiefelFrame frame = random_frame(rng, n, p);
  return {n,
          p,
          params,
          frame,
          unit_tangent(params, rng, n, p),
          unit_tangent(params, rng, n, p),
          unit_tangent(params, rng, n, p)};
}

SkewTriple random_triple(Rng& rng, int n, int p) {
  return SkewTriple(random_skew(rng, p), random_mat(rng, n - p, p),
                    random_skew(rng, n - p));
}

SkewTriple random_m_triple(Rng& rng, int n, int p) {
  return SkewTriple(random_skew(rng, p), random_mat(rng, n - p, p), SkewMat(n - p));
}

double triple_norm(const SkewTriple& w) { return frobenius(w.assemble()); }

}  // namespace

SuiteResult suite_cross_path(const VerifyOptions& o) {
  Rng rng(o.seed);
  double worst = 0.0;
  for (int k = 0; k < o.instances; ++k) {
    Instance in = make_instance(rng, o.n_max);
    CurvatureCoords cc = curvature_coords(in.params, in.x1, in.x2, in.x3);
    AmbientVector r_coord = from_coords(in.frame, {cc.A_R, cc.B_R});

    AmbientVector a1 = from_coords(in.frame, in.x1);
    AmbientVector a2 = from_coords(in.frame, in.x2);
    AmbientVector a3 = from_coords(in.frame, in.x3);
    AmbientVector r_amb = curvature_ambient_analytic(in.params, in.frame, a1, a2, a3);
    AmbientVector r_amb2 = curvature_ambient_analytic2(in.params, in.frame, a1, a2, a3);

    DeformParams dp(in.params.t());
    SkewTriple rt = hom_curvature(dp, SkewTriple::from_tangent(in.x1),
                                  SkewTriple::from_tangent(in.x2),
                                  SkewTriple::from_tangent(in.x3));
    AmbientVector r_lie = from_coords(in.frame, TangentCoords{rt.A, rt.B});

    worst = std::max({worst, rel_dev(r_coord, r_amb), rel_dev(r_coord, r_amb2),
                      rel_dev(r_coord, r_lie), rel_dev(r_amb, r_amb2),
                      rel_dev(r_amb, r_lie)});
  }
  return {"cross_path", worst, 1e-10, o.instances, worst <= 1e-10};
}

SuiteResult suite_cross_path_fd(const VerifyOptions& o) {
  Rng rng(o.seed + 1);
  double worst = 0.0;
  for (int k = 0; k < o.instances; ++k) {
    Instance in = make_instance(rng, o.n_max);
    CurvatureCoords cc = curvature_coords(in.params, in.x1, in.x2, in.x3);
    AmbientVector r_coord = from_coords(in.frame, {cc.A_R, cc.B_R});
    AmbientVector r_fd = curvature_ambient_fd(
        in.params, in.frame, from_coords(in.frame, in.x1),
        from_coords(in.frame, in.x2), from_coords(in.frame, in.x3), 1e-4);
    worst = std::max(worst, rel_dev(r_coord, r_fd));
  }
  return {"cross_path_fd", worst, 1e-6, o.instances, worst <= 1e-6};
}

SuiteResult suite_corner_sections() {
  static const double kAlphas[] = {0.1, 0.3, 0.5, 2.0 / 3.0, 1.0, 1.5, 2.0, 3.0};
  static const int kShapes[][2] = {{4, 3}, {5, 2}, {5, 4}, {6, 3}, {6, 4}, {7, 5}};
  double worst = 0.0;
  int count = 0;
  for (auto [n, p] : kShapes) {
    for (const auto& c : corner_sections(n, p)) {
      for (double a : kAlphas) {
        if (!c.alpha_ok(a)) continue;
        Section s = c.build(n, p, a);
        SectionEval ev = sectional(MetricParams(a), s.xi, s.eta);
        if (!ev.kappa_defined) {
          worst = std::max(worst, 1.0);
          continue;
        }
        worst = std::max(worst, std::abs(ev.kappa - c.kappa_formula(a)));
        ++count;
      }
    }
  }
  return {"corner_sections", worst, 1e-12, count, worst <= 1e-12};
}

SuiteResult suite_tensor_symmetry(const VerifyOptions& o) {
  Rng rng(o.seed + 2);
  double worst = 0.0;
  for (int k = 0; k < o.instances; ++k) {
    Instance in = make_instance(rng, o.n_max);
    TangentCoords x4 = unit_tangent(in.params, rng, in.n, in.p);

    CurvatureCoords r12 = curvature_coords(in.params, in.x1, in.x2, in.x3);
    CurvatureCoords r21 = curvature_coords(in.params, in.x2, in.x1, in.x3);
    Mat anti = (r12.A_R + r21.A_R).full();
    worst = std::max(worst, frobenius(anti) + frobenius(r12.B_R + r21.B_R));

    double pair = curvature_quad(in.params, in.x1, in.x2, in.x3, x4) -
                  curvature_quad(in.params, in.x3, x4, in.x1, in.x2);
    worst = std::max(worst, std::abs(pair));

    CurvatureCoords r231 = curvature_coords(in.params, in.x2, in.x3, in.x1);
    CurvatureCoords r312 = curvature_coords(in.params, in.x3, in.x1, in.x2);
    Mat bianchi_a = (r12.A_R + r231.A_R + r312.A_R).full();
    Mat bianchi_b = r12.B_R + r231.B_R + r312.B_R;
    worst = std::max(worst, frobenius(bianchi_a) + frobenius(bianchi_b));
  }
  return {"tensor_symmetry", worst, 1e-10, o.instances, worst <= 1e-10};
}

namespace {

// orthonormal basis of a p x p matrix subspace under Tr(X Y^T)
std::vector<Mat> basis_full(int p) {
  std::vector<Mat> out;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      Mat e(p, p);
      e(i, j) = 1.0;
      out.push_back(e);
    }
  return out;
}

std::vector<Mat> basis_sym(int p) {
  std::vector<Mat> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < p; ++i) {
    Mat e(p, p);
    e(i, i) = 1.0;
    out.push_back(e);
  }
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      Mat e(p, p);
      e(i, j) = s;
      e(j, i) = s;
      out.push_back(e);
    }
  return out;
}

std::vector<Mat> basis_skew(int p) {
  std::vector<Mat> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      Mat e(p, p);
      e(i, j) = s;
      e(j, i) = -s;
      out.push_back(e);
    }
  return out;
}

template <class Op>
double brute_trace(const std::vector<Mat>& basis, Op&& op) {
  double acc = 0.0;
  for (const Mat& e : basis) acc += inner_frob(op(e), e);
  return acc;
}

}  // namespace

SuiteResult suite_trace_identities(const VerifyOptions& o) {
  Rng rng(o.seed + 3);
  double worst = 0.0;
  for (int k = 0; k < o.instances; ++k) {
    int p = 2 + int(rng.uniform() * 5.0) % 5;  // 2..6
    Mat a = random_mat(rng, p, p), b = random_mat(rng, p, p);

    // X -> A X B on the full space: Tr(A) Tr(B)
    double d1 = brute_trace(basis_full(p), [&](const Mat& x) { return a * x * b; }) -
                trace_op_AXB(a, b, OpSpace::Full);
    // X -> A X^T B on the full space: Tr(A B^T)
    double d2 =
        brute_trace(basis_full(p), [&](const Mat& x) { return a * transpose(x) * b; }) -
        inner_frob(a, b);
    // X -> A X B + B^T X A^T on symmetric / antisymmetric matrices
    auto sym_op = [&](const Mat& x) {
      return a * x * b + transpose(b) * x * transpose(a);
    };
    double d3 = brute_trace(basis_sym(p), sym_op) - trace_op_AXB(a, b, OpSpace::Symmetric);
    double d4 = brute_trace(basis_skew(p), sym_op) - trace_op_AXB(a, b, OpSpace::Skew);
    // skew A, B: X -> [[A, X], B] on antisymmetric matrices: (2-p) Tr(A B)
    Mat sa = random_skew(rng, p).full(), sb = random_skew(rng, p).full();
    double d5 = brute_trace(basis_skew(p),
                            [&](const Mat& x) {
                              return commutator(commutator(sa, x), sb);
                            }) -
                (2.0 - p) * trace(sa * sb);
    worst = std::max({worst, std::abs(d1), std::abs(d2), std::abs(d3), std::abs(d4),
                      std::abs(d5)});
  }
  return {"trace_identities", worst, 1e-12, o.instances, worst <= 1e-12};
}

SuiteResult suite_deformation_identities(const VerifyOptions& o) {
  Rng rng(o.seed + 4);
  double worst = 0.0;
  for (int k = 0; k < o.instances; ++k) {
    int n = 3 + int(rng.uniform() * double(o.n_max - 2));
    n = std::min(n, o.n_max);
    int p = 2 + int(rng.uniform() * double(n - 2));
    p = std::min(p, n - 1);
    DeformParams dp(rng.uniform(0.3, 4.0));

    SkewTriple w1 = random_triple(rng, n, p), w2 = random_triple(rng, n, p),
               w3 = random_triple(rng, n, p);

    // adjoint relation <[w1, w2], w3>_P = <w2, ad^+_{w1} w3>_P
    double adj = deformed_inner(dp, bracket(w1, w2), w3) -
                 deformed_inner(dp, w2, ad_dagger(dp, w1, w3));
    worst = std::max(worst, std::abs(adj));

    // metric-compatible bracket, both characterizations
    SkewTriple bp = bracket_P(dp, w1, w2);
    SkewTriple via_ad =
        bracket(w1, w2) - ad_dagger(dp, w1, w2) - ad_dagger(dp, w2, w1);
    worst = std::max(worst, triple_norm(bp - via_ad));
    AbhParts p1 = decompose_abh(w1), p2 = decompose_abh(w2);
    SkewTriple via_blocks = bracket(w1, w2) +
                            (1.0 - dp.t) * (bracket(p1.a, p2.b) + bracket(p2.a, p1.b));
    worst = std::max(worst, triple_norm(bp - via_blocks));

    // projection identity: (ad^+_{w3}[w1,w2]_k)_m = -[w3_m, [w1,w2]_k]
    SkewTriple kpart = proj_h(bracket(w1, w2));
    SkewTriple lhs = proj_m(ad_dagger(dp, w3, kpart));
    SkewTriple rhs = -1.0 * bracket(proj_m(w3), kpart);
    worst = std::max(worst, triple_norm(lhs - rhs));

    // weighted-sum sectional formula vs the curvature numerator
    SkewTriple m1 = random_m_triple(rng, n, p), m2 = random_m_triple(rng, n, p);
    double gz = gz_sectional(dp, m1, m2);
    double num = deformed_inner(dp, hom_curvature(dp, m1, m2, m1), m2);
    worst = std::max(worst, std::abs(gz - num) / std::max(1.0, std::abs(num)));
  }
  return {"deformation_identities", worst, 1e-10, o.instances, worst <= 1e-10};
}

SuiteResult suite_deformation_interpolation(const VerifyOptions& o) {
  Rng rng(o.seed + 5);
  double worst = 0.0;
  for (int k = 0; k < o.instances; ++k) {
    int n = 3 + int(rng.uniform() * double(o.n_max - 2));
    n = std::min(n, o.n_max);
    int p = 2 + int(rng.uniform() * double(n - 2));
    p = std::min(p, n - 1);
    SkewTriple w1 = random_m_triple(rng, n, p), w2 = random_m_triple(rng, n, p),
               w3 = random_m_triple(rng, n, p);

    // R(t) = R0 + (1-t) R1 + (1-t)^2 R2; sample t = 1, 1/2, 2 and solve
    Mat r0 = hom_curvature(DeformParams(1.0), w1, w2, w3).assemble();
    Mat rh = hom_curvature(DeformParams(0.5), w1, w2, w3).assemble();  // u = 1/2
    Mat r2m = hom_curvature(DeformParams(2.0), w1, w2, w3).assemble();  // u = -1
    Mat a = rh - r0;   // (1/2) R1 + (1/4) R2
    Mat b = r2m - r0;  // -R1 + R2
    Mat r1_fit = (1.0 / 3.0) * (4.0 * a - b);
    Mat r2_fit = b + r1_fit;

    PtCurvatureSplit split = curvature_Pt_decomposed(w1, w2, w3);
    worst = std::max({worst, frobenius(split.R0.assemble() - r0),
                      frobenius(split.R1.assemble() - r1_fit),
                      frobenius(split.R2.assemble() - r2_fit)});
  }
  return {"deformation_interpolation", worst, 1e-9, o.instances, worst <= 1e-9};
}

SuiteResult suite_einstein() {
  static const int kShapes[][2] = {{10, 2}, {4, 3}, {5, 4}, {9, 5}};
  double worst = 0.0;
  bool ok = true;
  int count = 0;
  for (auto [n, p] : kShapes) {
    EinsteinSolution sol = einstein_alphas(n, p);
    for (double root : sol.roots) {
      worst = std::max(worst, verify_einstein(MetricParams(root), n, p, 1000));
      worst = std::max(worst,
                       std::abs(ricci_eigen_a(root, n, p) - ricci_eigen_b(root, n, p)));
      ++count;
    }
    // off-root negative control must show a clear deviation
    double off = sol.roots.back() + 0.3;
    if (verify_einstein(MetricParams(off), n, p, 200) <= 1e-3) ok = false;
  }
  return {"einstein", worst, 1e-10, count, ok && worst <= 1e-10};
}

namespace {

// g-orthonormal tangent basis at the canonical frame
std::vector<TangentCoords> tangent_basis(const MetricParams& params, int n, int p) {
  std::vector<TangentCoords> out;
  const double sa = 1.0 / std::sqrt(2.0 * params.alpha);
  const size_t la = SkewMat::lower_size(p);
  for (size_t k = 0; k < la; ++k) {
    std::vector<double> lo(la, 0.0);
    lo[k] = sa;
    out.push_back({SkewMat::from_lower(p, lo), Mat(n - p, p)});
  }
  for (int i = 0; i < n - p; ++i)
    for (int j = 0; j < p; ++j) {
      Mat b(n - p, p);
      b(i, j) = 1.0;
      out.push_back({SkewMat(p), b});
    }
  return out;
}

}  // namespace

SuiteResult suite_ricci_scalar() {
  struct Case {
    int n, p;
    double alpha;
  };
  static const Case kCases[] = {{5, 2, 0.5}, {6, 3, 1.0}, {7, 4, 1.3}};
  double worst = 0.0;
  bool ok = true;
  int count = 0;
  for (const Case& c : kCases) {
    MetricParams params(c.alpha);
    auto basis = tangent_basis(params, c.n, c.p);
    Rng rng(901);
    for (int k = 0; k < 5; ++k) {
      TangentCoords xi = random_tangent(rng, c.n, c.p);
      TangentCoords phi = random_tangent(rng, c.n, c.p);
      double tr = 0.0;
      for (const auto& b : basis) tr += curvature_quad(params, xi, b, phi, b);
      double dev = std::abs(ricci(params, c.n, c.p, xi, phi) - tr);
      worst = std::max(worst, dev);
      if (dev > 1e-10) ok = false;
      ++count;
    }
    double dbl = 0.0;
    for (const auto& bj : basis)
      for (const auto& bk : basis) dbl += curvature_quad(params, bj, bk, bj, bk);
    double sdev = std::abs(scalar_curvature(params, c.n, c.p) - dbl);
    worst = std::max(worst, sdev);
    if (sdev > 1e-9) ok = false;
    ++count;
  }
  return {"ricci_scalar", worst, 1e-9, count, ok};
}

SuiteResult suite_special_values() {
  double worst = std::abs(frak_l(0.5));
  worst = std::max(worst, std::abs(frak_l(0.7) + 0.05));
  // stationarity of the gamma family at its minimizer, central differences
  double worst_slope = 0.0;
  for (double a = 0.05; a <= 0.69 + 1e-12; a += 0.04) {
    double g = gamma_min(a);
    double h = 1e-3 * (2.0 * a + g);  // step scaled to the pole distance
    double slope = (-frak_c(a, g + 2 * h) + 8.0 * frak_c(a, g + h) -
                    8.0 * frak_c(a, g - h) + frak_c(a, g - 2 * h)) /
                   (12.0 * h);
    worst_slope = std::max(worst_slope, std::abs(slope));
  }
  bool ok = worst <= 1e-12 && worst_slope <= 1e-10;
  return {"special_values", std::max(worst, worst_slope), 1e-10, 18, ok};
}

std::vector<SuiteResult> run_all_suites(const VerifyOptions& o) {
  return {suite_cross_path(o),
          suite_cross_path_fd(o),
          suite_corner_sections(),
          suite_tensor_symmetry(o),
          suite_trace_identities(o),
          suite_deformation_identities(o),
          suite_deformation_interpolation(o),
          suite_einstein(),
          suite_ricci_scalar(),
          suite_special_values()};
}

}  // namespace stcurv
