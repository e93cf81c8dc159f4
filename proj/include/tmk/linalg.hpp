#pragma once

#include <vector>

#include "tmk/errors.hpp"

namespace tmk {

using Vec = std::vector<double>;

// Row-major dense matrix, sized for chart dimensions (n <= 16).
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
  static Mat identity(int n);

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
};

Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_transpose(const Mat& x);
// Gauss-Jordan with partial pivoting; throws SingularMetric.
Mat mat_inverse(const Mat& x);
double mat_det(const Mat& x);
Vec mat_vec(const Mat& x, const Vec& v);

double max_abs(const Mat& x);
double max_abs(const Vec& v);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
Vec symmetric_eigenvalues(const Mat& s, int sweeps = 32);

// Counts of (positive, negative) eigenvalues outside +-tol.
struct Signature {
  int positive = 0;
  int negative = 0;
};
Signature metric_signature(const Mat& s, double tol = 1e-10);

// True when all eigenvalues exceed tol.
bool is_positive_definite(const Mat& s, double tol = 1e-12);

}  // namespace tmk
