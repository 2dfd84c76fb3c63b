// Command-line driver: curvature evaluation, Einstein parameters, range
// optimization, alpha sweeps, representative sections, and the verification
// suites. JSON in/out for single evaluations, CSV for sweeps.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "stiefelcurv/verify.hpp"

using json = nlohmann::json;
using namespace stcurv;

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitArgError = 2;
constexpr int kExitIoError = 3;
constexpr int kSchemaVersion = 1;

struct ArgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- 17-significant-digit JSON emission -----------------------------------

std::string js_num(double v) {
  if (std::isnan(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string js_mat(const Mat& m) {
  std::string s = "[";
  for (int i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += js_num(m(i, j));
    }
    s += "]";
  }
  return s + "]";
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot open output file: " + path);
  f << text;
  if (!f) throw IoError("write failed: " + path);
}

// ---- JSON input parsing ----------------------------------------------------

json read_json(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open input file: " + path);
    buf << f.rdbuf();
  }
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw ArgError(std::string("malformed JSON: ") + e.what());
  }
}

Mat mat_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ArgError(what + ": expected a nested array of numbers");
  int rows = int(j.size()), cols = int(j[0].size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || int(j[i].size()) != cols)
      throw ArgError(what + ": ragged rows");
    for (int c = 0; c < cols; ++c) {
      if (!j[i][c].is_number()) throw ArgError(what + ": non-numeric entry");
      m(i, c) = j[i][c].get<double>();
    }
  }
  return m;
}

StiefelFrame frame_from_json(const json& j, int n_hint, int p_hint) {
  if (j.is_string() && j.get<std::string>() == "canonical") {
    if (n_hint <= 0 || p_hint <= 0)
      throw ArgError("canonical frame requires --n and --p (or block input)");
    Mat y(n_hint, p_hint);
    for (int i = 0; i < p_hint; ++i) y(i, i) = 1.0;
    return complete_frame(y);
  }
  return complete_frame(mat_from_json(j, "frame"));
}

TangentCoords tangent_from_json(const json& j, const StiefelFrame& frame,
                                bool strict, const std::string& name,
                                double& residual_out) {
  residual_out = 0.0;
  if (j.is_object()) {
    Mat a = mat_from_json(j.at("A"), name + ".A");
    Mat b = mat_from_json(j.at("B"), name + ".B");
    if (a.rows() != frame.p || a.cols() != frame.p)
      throw ArgError(name + ".A: must be p x p");
    if (b.rows() != frame.n - frame.p || b.cols() != frame.p)
      throw ArgError(name + ".B: must be (n-p) x p");
    if (frobenius(a + transpose(a)) > 1e-12)
      throw ArgError(name + ".A: not antisymmetric (rejected, not symmetrized)");
    return TangentCoords(SkewMat::from_skew_part(a), std::move(b));
  }
  Mat w = mat_from_json(j, name);
  if (w.rows() != frame.n || w.cols() != frame.p)
    throw ArgError(name + ": ambient matrix must be n x p");
  residual_out = tangency_residual(frame, w);
  if (strict && residual_out > 1e-8)
    throw ArgError(name + ": not tangent (residual " + js_num(residual_out) +
                   ") and --strict given");
  return project_tangent(frame, w);
}

// ---- subcommands -----------------------------------------------------------

struct CurvatureArgs {
  std::string in, out;
  double alpha = 1.0;
  int n = 0, p = 0;
  bool strict = false, check = false;
  double tol = 1e-9;
};

int cmd_curvature(const CurvatureArgs& a) {
  json in = read_json(a.in);
  if (!in.contains("xi") || !in.contains("eta"))
    throw ArgError("input must contain \"xi\" and \"eta\"");

  int n = a.n, p = a.p;
  if (in.contains("frame") && in["frame"].is_array()) {
    Mat y = mat_from_json(in["frame"], "frame");
    n = y.rows();
    p = y.cols();
  } else if (in["xi"].is_object()) {
    Mat ax = mat_from_json(in["xi"].at("A"), "xi.A");
    Mat bx = mat_from_json(in["xi"].at("B"), "xi.B");
    p = ax.rows();
    n = ax.rows() + bx.rows();
  } else {
    Mat w = mat_from_json(in["xi"], "xi");
    n = w.rows();
    p = w.cols();
  }
  if ((a.n && a.n != n) || (a.p && a.p != p))
    throw ArgError("--n/--p disagree with input matrix shapes");
  if (p < 2 || p >= n) throw ArgError("requires 2 <= p < n");

  MetricParams params(a.alpha);
  StiefelFrame frame =
      frame_from_json(in.contains("frame") ? in["frame"] : json("canonical"), n, p);

  double res_xi = 0.0, res_eta = 0.0, res_phi = 0.0;
  TangentCoords xi = tangent_from_json(in["xi"], frame, a.strict, "xi", res_xi);
  TangentCoords eta = tangent_from_json(in["eta"], frame, a.strict, "eta", res_eta);
  TangentCoords phi =
      in.contains("phi")
          ? tangent_from_json(in["phi"], frame, a.strict, "phi", res_phi)
          : xi;

  CurvatureCoords cc = curvature_coords(params, xi, eta, phi);
  SectionEval ev = sectional(params, xi, eta);
  double ric = ricci(params, n, p, xi, eta);
  double num_tf = sectional_numerator(params, xi, eta, NumeratorForm::TraceForm);
  double num_ss = sectional_numerator(params, xi, eta, NumeratorForm::SumSq);
  double num_ss2 = sectional_numerator(params, xi, eta, NumeratorForm::SumSq2);

  std::string outj =
      std::string("{\"schema_version\":") + std::to_string(kSchemaVersion) +
      ",\"n\":" + std::to_string(n) + ",\"p\":" + std::to_string(p) +
      ",\"alpha\":" + js_num(a.alpha) + ",\"A_R\":" + js_mat(cc.A_R.full()) +
      ",\"B_R\":" + js_mat(cc.B_R) + ",\"ricci\":" + js_num(ric) +
      ",\"numerator\":{\"traceform\":" + js_num(num_tf) +
      ",\"sumsq\":" + js_num(num_ss) + ",\"sumsq2\":" + js_num(num_ss2) +
      "},\"wedge\":" + js_num(ev.wedge) + ",\"kappa\":" + js_num(ev.kappa) +
      ",\"kappa_defined\":" + (ev.kappa_defined ? "true" : "false") +
      ",\"projection_residuals\":{\"xi\":" + js_num(res_xi) +
      ",\"eta\":" + js_num(res_eta) + ",\"phi\":" + js_num(res_phi) + "}}";

  if (a.check) {
    if (!in.contains("expected")) throw ArgError("--check requires \"expected\"");
    json got = json::parse(outj);
    json exp = in["expected"];
    bool ok = true;
    std::function<void(const json&, const json&, std::string)> cmp =
        [&](const json& e, const json& g, std::string path) {
          if (e.is_object()) {
            for (auto& [k, v] : e.items()) {
              if (!g.contains(k)) {
                std::cerr << "check: missing field " << path + k << "\n";
                ok = false;
              } else {
                cmp(v, g[k], path + k + ".");
              }
            }
          } else if (e.is_array()) {
            if (!g.is_array() || g.size() != e.size()) {
              std::cerr << "check: shape mismatch at " << path << "\n";
              ok = false;
              return;
            }
            for (size_t i = 0; i < e.size(); ++i)
              cmp(e[i], g[i], path + std::to_string(i) + ".");
          } else if (e.is_number()) {
            double d = std::abs(e.get<double>() -
                                (g.is_number() ? g.get<double>() : NAN));
            if (!(d <= a.tol)) {
              std::cerr << "check: " << path << " deviates by " << d << "\n";
              ok = false;
            }
          } else if (e != g) {
            std::cerr << "check: mismatch at " << path << "\n";
            ok = false;
          }
        };
    cmp(exp, got, "");
    write_output(a.out, outj);
    return ok ? 0 : kExitVerifyFail;
  }
  write_output(a.out, outj);
  return 0;
}

int cmd_einstein(int n, int p, const std::string& out) {
  EinsteinSolution sol = einstein_alphas(n, p);  // throws on bad (n,p)
  std::string roots = "[", devs = "[", gaps = "[";
  for (size_t i = 0; i < sol.roots.size(); ++i) {
    double r = sol.roots[i];
    if (i) roots += ",", devs += ",", gaps += ",";
    roots += js_num(r);
    devs += js_num(verify_einstein(MetricParams(r), n, p, 1000));
    gaps += js_num(std::abs(ricci_eigen_a(r, n, p) - ricci_eigen_b(r, n, p)));
  }
  std::string j = std::string("{\"schema_version\":") +
                  std::to_string(kSchemaVersion) + ",\"n\":" + std::to_string(n) +
                  ",\"p\":" + std::to_string(p) +
                  ",\"discriminant\":" + js_num(sol.discriminant) +
                  ",\"roots\":" + roots + "],\"verify_max_deviation\":" + devs +
                  "],\"eigenvalue_gap\":" + gaps + "]}";
  write_output(out, j);
  return 0;
}

std::string js_section(const SectionEval& ev) {
  return "{\"A1\":" + js_mat(ev.xi.A.full()) + ",\"B1\":" + js_mat(ev.xi.B) +
         ",\"A2\":" + js_mat(ev.eta.A.full()) + ",\"B2\":" + js_mat(ev.eta.B) +
         ",\"kappa\":" + js_num(ev.kappa) + "}";
}

int cmd_range(int n, int p, double alpha, int restarts, uint64_t seed,
              const std::string& out) {
  RangeReport rep = optimize_range(n, p, alpha, restarts, seed);
  Interval iv = interval_table(n, p, alpha);
  bool contained = iv.lo >= rep.kappa_min - 1e-3 && iv.hi <= rep.kappa_max + 1e-3;
  std::string corners = "{";
  bool first = true;
  for (const auto& c : corner_sections(n, p)) {
    if (!c.alpha_ok(alpha)) continue;
    if (!first) corners += ",";
    first = false;
    corners += "\"" + c.label + "\":" + js_num(c.kappa_formula(alpha));
  }
  std::string j =
      std::string("{\"schema_version\":") + std::to_string(kSchemaVersion) +
      ",\"n\":" + std::to_string(n) + ",\"p\":" + std::to_string(p) +
      ",\"alpha\":" + js_num(alpha) + ",\"kappa_min\":" + js_num(rep.kappa_min) +
      ",\"kappa_max\":" + js_num(rep.kappa_max) +
      ",\"argmin\":" + js_section(rep.argmin) +
      ",\"argmax\":" + js_section(rep.argmax) +
      ",\"interval_lo\":" + js_num(iv.lo) + ",\"interval_hi\":" + js_num(iv.hi) +
      ",\"containment\":" + (contained ? "true" : "false") +
      ",\"corners\":" + corners + "}" + ",\"restarts\":" +
      std::to_string(rep.restarts_used) + ",\"seed\":" + std::to_string(seed) + "}";
  write_output(out, j);
  return 0;
}

int cmd_sweep(int n, int p, double amin, double amax, int points, int restarts,
              uint64_t seed, const std::string& out) {
  if (points < 1) throw ArgError("--points must be >= 1");
  if (!(amin > 0.0) || amax < amin) throw ArgError("need 0 < alpha-min <= alpha-max");
  std::vector<double> grid;
  for (int i = 0; i < points; ++i)
    grid.push_back(points == 1
                       ? amin
                       : amin + (amax - amin) * double(i) / double(points - 1));
  auto rows = sweep(n, p, grid, restarts, seed);
  write_output(out, sweep_csv(rows));
  return 0;
}

int cmd_corners(int n, int p, double alpha, const std::string& out) {
  MetricParams params(alpha);
  std::string j = "[";
  bool first = true;
  for (const auto& c : corner_sections(n, p)) {
    if (!first) j += ",";
    first = false;
    j += "{\"label\":\"" + c.label + "\",\"applicable\":" +
         (c.alpha_ok(alpha) ? "true" : "false");
    if (c.alpha_ok(alpha)) {
      Section s = c.build(n, p, alpha);
      SectionEval ev = sectional(params, s.xi, s.eta);
      j += ",\"kappa_formula\":" + js_num(c.kappa_formula(alpha)) +
           ",\"kappa_evaluated\":" + js_num(ev.kappa) +
           ",\"A1\":" + js_mat(s.xi.A.full()) + ",\"B1\":" + js_mat(s.xi.B) +
           ",\"A2\":" + js_mat(s.eta.A.full()) + ",\"B2\":" + js_mat(s.eta.B);
    }
    j += "}";
  }
  write_output(out, j + "]");
  return 0;
}

int cmd_verify(const std::string& level, uint64_t seed) {
  VerifyOptions o;
  o.seed = seed;
  if (level == "fast") {
    o.instances = 100;
    o.n_max = 5;
  } else {
    o.instances = 500;
    o.n_max = 8;
  }
  bool all_ok = true;
  std::string first_fail;
  for (const auto& s : run_all_suites(o)) {
    std::printf("%-28s max_dev=%-12.3e tol=%-8.0e instances=%-5d %s\n",
                s.name.c_str(), s.max_dev, s.tol, s.instances,
                s.pass ? "PASS" : "FAIL");
    if (!s.pass && first_fail.empty()) first_fail = s.name;
    all_ok = all_ok && s.pass;
  }
  if (!all_ok) {
    std::printf("FAILED suite: %s\n", first_fail.c_str());
    return kExitVerifyFail;
  }
  std::printf("all suites passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature of Stiefel manifolds under one-parameter deformation metrics"};
  app.require_subcommand(1);

  int n = 0, p = 0, restarts = 50, points = 30;
  double alpha = 1.0, amin = 0.05, amax = 3.0;
  uint64_t seed = 7;
  std::string in, out, level = "fast", format = "json";
  CurvatureArgs cargs;

  auto* c_curv = app.add_subcommand("curvature", "Evaluate curvature for one section");
  c_curv->add_option("--in", cargs.in, "input JSON file ('-' for stdin)")->required();
  c_curv->add_option("--out", cargs.out, "output path (default stdout)");
  c_curv->add_option("--alpha", cargs.alpha, "metric parameter")->required();
  c_curv->add_option("--n", cargs.n);
  c_curv->add_option("--p", cargs.p);
  c_curv->add_flag("--strict", cargs.strict, "reject non-tangent ambient input");
  c_curv->add_flag("--check", cargs.check, "compare against \"expected\" block");
  c_curv->add_option("--tol", cargs.tol, "tolerance for --check");

  auto* c_ein = app.add_subcommand("einstein", "Einstein metric parameters");
  c_ein->add_option("--n", n)->required();
  c_ein->add_option("--p", p)->required();
  c_ein->add_option("--out", out);

  auto* c_range = app.add_subcommand("range", "Numerical sectional curvature range");
  c_range->add_option("--n", n)->required();
  c_range->add_option("--p", p)->required();
  c_range->add_option("--alpha", alpha)->required();
  c_range->add_option("--restarts", restarts);
  c_range->add_option("--seed", seed);
  c_range->add_option("--out", out);

  auto* c_sweep = app.add_subcommand("sweep", "Range sweep over an alpha grid (CSV)");
  c_sweep->add_option("--n", n)->required();
  c_sweep->add_option("--p", p)->required();
  c_sweep->add_option("--alpha-min", amin);
  c_sweep->add_option("--alpha-max", amax);
  c_sweep->add_option("--points", points);
  c_sweep->add_option("--restarts", restarts);
  c_sweep->add_option("--seed", seed);
  c_sweep->add_option("--out", out);

  auto* c_corners = app.add_subcommand("corners", "Representative sections");
  c_corners->add_option("--n", n)->required();
  c_corners->add_option("--p", p)->required();
  c_corners->add_option("--alpha", alpha)->required();
  c_corners->add_option("--out", out);

  auto* c_verify = app.add_subcommand("verify", "Run the verification suites");
  c_verify->add_option("--level", level)
      ->check(CLI::IsMember({"fast", "full"}));
  c_verify->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitArgError;
  }

  try {
    if (*c_curv) return cmd_curvature(cargs);
    if (*c_ein) return cmd_einstein(n, p, out);
    if (*c_range) return cmd_range(n, p, alpha, restarts, seed, out);
    if (*c_sweep) return cmd_sweep(n, p, amin, amax, points, restarts, seed, out);
    if (*c_corners) return cmd_corners(n, p, alpha, out);
    if (*c_verify) return cmd_verify(level, seed);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const ArgError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitArgError;
}
