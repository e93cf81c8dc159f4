#pragma once

#include <span>
#include <vector>

#include "tmk/errors.hpp"

namespace tmk {

// Truncated Taylor value: a scalar together with its partial derivatives up
// to `order` (at most 3) with respect to `dim` chart coordinates.  All
// arithmetic propagates derivatives by exact product/chain rules, so any
// quantity assembled from jets carries derivatives that are exact up to
// rounding.  Values are immutable in spirit: operations return new jets.
//
// The Hessian block is stored full (not triangular) and is symmetric by
// construction; the third-order block is fully symmetric likewise.
class Jet {
public:
  static constexpr int kMaxOrder = 3;
  static constexpr int kMaxDim = 16;

  Jet() : dim_(0), order_(0), v_(0.0) {}
  Jet(int dim, int order);

  static Jet constant(int dim, int order, double v);
  // The jet of the coordinate function x^index evaluated where it takes
  // the value v.
  static Jet coordinate(int dim, int order, int index, double v);

  int dim() const { return dim_; }
  int order() const { return order_; }

  double value() const { return v_; }
  double d1(int i) const;
  double d2(int i, int j) const;
  double d3(int i, int j, int k) const;

  double& value() { return v_; }
  double& ref1(int i) { return g_[static_cast<std::size_t>(i)]; }
  double& ref2(int i, int j) { return h_[static_cast<std::size_t>(i * dim_ + j)]; }
  double& ref3(int i, int j, int k) {
    return t_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)];
  }

  // Jet of the partial derivative ∂_i, one order lower.
  Jet partial(int i) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);

private:
  void require_order(int k) const;
  friend Jet operator+(const Jet&, const Jet&);
  friend Jet operator-(const Jet&, const Jet&);
  friend Jet operator*(const Jet&, const Jet&);
  friend Jet compose(const Jet&, double, double, double, double);

  int dim_;
  int order_;
  double v_;
  std::vector<double> g_;  // dim
  std::vector<double> h_;  // dim*dim, present when order >= 2
  std::vector<double> t_;  // dim^3, present when order >= 3
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);

Jet operator+(const Jet& a, double s);
Jet operator+(double s, const Jet& a);
Jet operator-(const Jet& a, double s);
Jet operator-(double s, const Jet& a);
Jet operator*(const Jet& a, double s);
Jet operator*(double s, const Jet& a);
Jet operator/(const Jet& a, double s);
Jet operator/(double s, const Jet& a);

// Univariate composition: given outer derivatives f, f', f'', f''' at
// u.value(), returns the jet of f(u).
Jet compose(const Jet& u, double f0, double f1, double f2, double f3);

Jet exp(const Jet& u);
Jet log(const Jet& u);   // DomainError for u.value() <= 0
Jet sqrt(const Jet& u);  // DomainError for u.value() < 0, or = 0 with order > 0
Jet sin(const Jet& u);
Jet cos(const Jet& u);
// x^(p/q) with integer p, q.  Integer exponents (q == 1) accept any base;
// fractional exponents require a positive base.
Jet pow_rational(const Jet& u, long long p, long long q);
Jet reciprocal(const Jet& u);  // DomainError at 0

// Matrices of jets, row-major n x n.  Entries must share dim and order.
using JetMat = std::vector<Jet>;

// Gauss-Jordan inverse with partial pivoting on jet values.  Throws
// SingularMetric when a pivot value vanishes.
JetMat jet_mat_inverse(const JetMat& m, int n);
// Determinant via LU over the jet ring.
Jet jet_mat_det(const JetMat& m, int n);

}  // namespace tmk
