#include "stiefelcurv/matlin.hpp"

#include <cmath>
#include <utility>

namespace stcurv {

std::string shape_str(const Mat& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

static void check_same_shape(const Mat& a, const Mat& b, const char* op) {
  if (!a.same_shape(b))
    throw std::invalid_argument(std::string(op) + ": shape mismatch " + shape_str(a) +
                                " vs " + shape_str(b));
}

Mat::Mat(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("Mat: nonpositive shape");
  if (a_.size() != size_t(rows) * cols)
    throw std::invalid_argument("Mat: entries length != rows*cols");
  for (double x : a_)
    if (!std::isfinite(x)) throw std::invalid_argument("Mat: non-finite entry");
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat operator+(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "add");
  Mat c(a.rows(), a.cols());
  for (size_t k = 0; k < a.data().size(); ++k) c.data()[k] = a.data()[k] + b.data()[k];
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "sub");
  Mat c(a.rows(), a.cols());
  for (size_t k = 0; k < a.data().size(); ++k) c.data()[k] = a.data()[k] - b.data()[k];
  return c;
}

Mat operator-(const Mat& a) {
  Mat c(a.rows(), a.cols());
  for (size_t k = 0; k < a.data().size(); ++k) c.data()[k] = -a.data()[k];
  return c;
}

Mat operator*(double s, const Mat& a) {
  Mat c(a.rows(), a.cols());
  for (size_t k = 0; k < a.data().size(); ++k) c.data()[k] = s * a.data()[k];
  return c;
}

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: shape mismatch " + shape_str(a) + " times " +
                                shape_str(b));
  Mat c(a.rows(), b.cols());
  // fixed i,k,j order: row-major accumulation, bit-reproducible per platform
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Mat operator*(const Mat& a, const Mat& b) { return matmul(a, b); }

Mat transpose(const Mat& a) {
  Mat c(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
  return c;
}

Mat commutator(const Mat& a, const Mat& b) { return matmul(a, b) - matmul(b, a); }

double trace(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("trace: not square " + shape_str(a));
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

double frobenius(const Mat& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return std::sqrt(s);
}

double inner_frob(const Mat& a, const Mat& b) {
  check_same_shape(a, b, "inner_frob");
  double s = 0.0;
  for (size_t k = 0; k < a.data().size(); ++k) s += a.data()[k] * b.data()[k];
  return s;
}

SkewMat::SkewMat(int dim) : dim_(dim), lower_(lower_size(dim), 0.0) {
  if (dim <= 0) throw std::invalid_argument("SkewMat: nonpositive dim");
}

SkewMat SkewMat::from_lower(int dim, std::vector<double> lower) {
  SkewMat s(dim);
  if (lower.size() != lower_size(dim))
    throw std::invalid_argument("SkewMat: wrong lower-triangle length");
  for (double x : lower)
    if (!std::isfinite(x)) throw std::invalid_argument("SkewMat: non-finite entry");
  s.lower_ = std::move(lower);
  return s;
}

SkewMat SkewMat::from_skew_part(const Mat& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("SkewMat: not square " + shape_str(m));
  SkewMat s(m.rows());
  size_t k = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < i; ++j) s.lower_[k++] = 0.5 * (m(i, j) - m(j, i));
  return s;
}

Mat SkewMat::full() const {
  Mat m(dim_, dim_);
  size_t k = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < i; ++j) {
      m(i, j) = lower_[k];
      m(j, i) = -lower_[k];
      ++k;
    }
  return m;
}

SkewMat operator+(const SkewMat& a, const SkewMat& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("SkewMat add: dim mismatch");
  SkewMat c(a.dim());
  std::vector<double> lo(a.lower());
  for (size_t k = 0; k < lo.size(); ++k) lo[k] += b.lower()[k];
  return SkewMat::from_lower(a.dim(), std::move(lo));
}

SkewMat operator-(const SkewMat& a, const SkewMat& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("SkewMat sub: dim mismatch");
  std::vector<double> lo(a.lower());
  for (size_t k = 0; k < lo.size(); ++k) lo[k] -= b.lower()[k];
  return SkewMat::from_lower(a.dim(), std::move(lo));
}

SkewMat operator*(double s, const SkewMat& a) {
  std::vector<double> lo(a.lower());
  for (double& x : lo) x *= s;
  return SkewMat::from_lower(a.dim(), std::move(lo));
}

double trace_op_AXB(const Mat& a, const Mat& b, OpSpace space) {
  switch (space) {
    case OpSpace::Full:
      // X in R^{m x n}, X -> AXB with A m x m, B n x n: Tr(A)Tr(B)
      if (a.rows() != a.cols() || b.rows() != b.cols())
        throw std::invalid_argument("trace_op_AXB(full): A, B must be square");
      return trace(a) * trace(b);
    case OpSpace::Symmetric:
      // X symmetric p x p, X -> AXB + B^T X A^T: Tr(A)Tr(B) + Tr(AB^T)
      if (a.rows() != a.cols() || !a.same_shape(b))
        throw std::invalid_argument("trace_op_AXB(sym): A, B must be square same size");
      return trace(a) * trace(b) + inner_frob(a, b);
    case OpSpace::Skew:
      // X antisymmetric p x p, X -> AXB + B^T X A^T: Tr(A)Tr(B) - Tr(AB^T)
      if (a.rows() != a.cols() || !a.same_shape(b))
        throw std::invalid_argument("trace_op_AXB(skew): A, B must be square same size");
      return trace(a) * trace(b) - inner_frob(a, b);
  }
  throw std::invalid_argument("trace_op_AXB: unknown space");
}

void qr_householder(const Mat& m, Mat& q, Mat& r) {
  int n = m.rows(), p = m.cols();
  r = m;
  q = Mat::identity(n);
  std::vector<double> v(n);
  for (int k = 0; k < p && k < n - 1; ++k) {
    double norm = 0.0;
    for (int i = k; i < n; ++i) norm += r(i, k) * r(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    double alpha = (r(k, k) >= 0.0) ? -norm : norm;
    double vnorm2 = 0.0;
    for (int i = k; i < n; ++i) {
      v[i] = r(i, k) - (i == k ? alpha : 0.0);
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 == 0.0) continue;
    for (int j = k; j < p; ++j) {
      double dot = 0.0;
      for (int i = k; i < n; ++i) dot += v[i] * r(i, j);
      double c = 2.0 * dot / vnorm2;
      for (int i = k; i < n; ++i) r(i, j) -= c * v[i];
    }
    for (int j = 0; j < n; ++j) {
      double dot = 0.0;
      for (int i = k; i < n; ++i) dot += v[i] * q(i, j);
      double c = 2.0 * dot / vnorm2;
      for (int i = k; i < n; ++i) q(i, j) -= c * v[i];
    }
  }
  // q currently holds the product of reflectors applied to I, i.e. Q^T
  q = transpose(q);
  // sign convention: positive diagonal of R
  for (int k = 0; k < p && k < n; ++k) {
    if (r(k, k) < 0.0) {
      for (int j = 0; j < p; ++j) r(k, j) = -r(k, j);
      for (int i = 0; i < n; ++i) q(i, k) = -q(i, k);
    }
  }
}

void sym_eig(const Mat& m, Mat& v, std::vector<double>& lam) {
  int n = m.rows();
  if (m.rows() != m.cols()) throw std::invalid_argument("sym_eig: not square");
  Mat a = m;
  v = Mat::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30) break;
    for (int pp = 0; pp < n; ++pp)
      for (int qq = pp + 1; qq < n; ++qq) {
        if (std::abs(a(pp, qq)) < 1e-300) continue;
        double theta = (a(qq, qq) - a(pp, pp)) / (2.0 * a(pp, qq));
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, pp), akq = a(k, qq);
          a(k, pp) = c * akp - s * akq;
          a(k, qq) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(pp, k), aqk = a(qq, k);
          a(pp, k) = c * apk - s * aqk;
          a(qq, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v(k, pp), vkq = v(k, qq);
          v(k, pp) = c * vkp - s * vkq;
          v(k, qq) = s * vkp + c * vkq;
        }
      }
  }
  lam.resize(n);
  for (int i = 0; i < n; ++i) lam[i] = a(i, i);
}

Mat sym_inv_sqrt(const Mat& m) {
  Mat v;
  std::vector<double> lam;
  sym_eig(m, v, lam);
  int n = m.rows();
  for (double l : lam)
    if (l <= 0.0) throw std::invalid_argument("sym_inv_sqrt: matrix not positive definite");
  Mat d(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = 1.0 / std::sqrt(lam[i]);
  return v * d * transpose(v);
}

}  // namespace stcurv
