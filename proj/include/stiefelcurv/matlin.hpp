#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stcurv {

// Dense row-major real matrix. Sizes here stay small (n <= a few hundred),
// so everything is plain triple loops with a fixed accumulation order.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0.0) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("Mat: nonpositive shape");
  }
  Mat(int rows, int cols, std::vector<double> entries);

  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

std::string shape_str(const Mat& m);

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator-(const Mat& a);
Mat operator*(double s, const Mat& a);
Mat operator*(const Mat& a, const Mat& b);  // matmul

Mat matmul(const Mat& a, const Mat& b);
Mat transpose(const Mat& a);
Mat commutator(const Mat& a, const Mat& b);  // ab - ba
double trace(const Mat& a);
double frobenius(const Mat& a);
double inner_frob(const Mat& a, const Mat& b);  // Tr(a b^T)

// Antisymmetric matrix stored by its strictly lower triangle, so that
// S + S^T = 0 holds exactly as floating point.
class SkewMat {
 public:
  SkewMat() = default;
  explicit SkewMat(int dim);  // zero

  // lower[k] enumerates entries (i,j), i > j, row by row.
  static SkewMat from_lower(int dim, std::vector<double> lower);
  // strictly lower triangle of (m - m^T)/2
  static SkewMat from_skew_part(const Mat& m);

  int dim() const { return dim_; }
  Mat full() const;
  const std::vector<double>& lower() const { return lower_; }

  static size_t lower_size(int dim) { return size_t(dim) * (dim - 1) / 2; }

 private:
  int dim_ = 0;
  std::vector<double> lower_;
};

SkewMat operator+(const SkewMat& a, const SkewMat& b);
SkewMat operator-(const SkewMat& a, const SkewMat& b);
SkewMat operator*(double s, const SkewMat& a);

enum class OpSpace { Full, Symmetric, Skew };

// Closed-form traces of X -> AXB (full space) and X -> AXB + B^T X A^T
// (symmetric / antisymmetric spaces).
double trace_op_AXB(const Mat& a, const Mat& b, OpSpace space);

// Householder QR with positive-diagonal R sign convention; q is square n x n.
void qr_householder(const Mat& m, Mat& q, Mat& r);

// Jacobi eigendecomposition of a symmetric matrix: m = v diag(lam) v^T.
void sym_eig(const Mat& m, Mat& v, std::vector<double>& lam);

// (SPD) m^{-1/2}
Mat sym_inv_sqrt(const Mat& m);

}  // namespace stcurv
