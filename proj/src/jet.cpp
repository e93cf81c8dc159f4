#include "tmk/jet.hpp"

#include <cmath>
#include <cstdlib>

namespace tmk {

namespace {

void check_compatible(const Jet& a, const Jet& b) {
  if (a.dim() != b.dim()) {
    throw Error("jet dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                std::to_string(b.dim()));
  }
}

}  // namespace

Jet::Jet(int dim, int order) : dim_(dim), order_(order), v_(0.0) {
  if (dim < 0 || dim > kMaxDim) throw Error("jet dimension out of range");
  if (order < 0 || order > kMaxOrder) throw Error("jet order out of range");
  const std::size_t d = static_cast<std::size_t>(dim);
  if (order >= 1) g_.assign(d, 0.0);
  if (order >= 2) h_.assign(d * d, 0.0);
  if (order >= 3) t_.assign(d * d * d, 0.0);
}

Jet Jet::constant(int dim, int order, double v) {
  Jet j(dim, order);
  j.v_ = v;
  return j;
}

Jet Jet::coordinate(int dim, int order, int index, double v) {
  Jet j(dim, order);
  j.v_ = v;
  if (order >= 1) j.g_[static_cast<std::size_t>(index)] = 1.0;
  return j;
}

void Jet::require_order(int k) const {
  if (order_ < k) {
    throw OrderExceeded("jet of order " + std::to_string(order_) +
                        " queried for derivatives of order " + std::to_string(k));
  }
}

double Jet::d1(int i) const {
  require_order(1);
  return g_[static_cast<std::size_t>(i)];
}

double Jet::d2(int i, int j) const {
  require_order(2);
  return h_[static_cast<std::size_t>(i * dim_ + j)];
}

double Jet::d3(int i, int j, int k) const {
  require_order(3);
  return t_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)];
}

Jet Jet::partial(int i) const {
  require_order(1);
  Jet p(dim_, order_ - 1);
  p.v_ = d1(i);
  if (p.order_ >= 1) {
    for (int a = 0; a < dim_; ++a) p.ref1(a) = d2(i, a);
  }
  if (p.order_ >= 2) {
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b) p.ref2(a, b) = d3(i, a, b);
  }
  return p;
}

Jet Jet::operator-() const {
  Jet r = *this;
  r.v_ = -r.v_;
  for (double& x : r.g_) x = -x;
  for (double& x : r.h_) x = -x;
  for (double& x : r.t_) x = -x;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  *this = *this + o;
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  *this = *this - o;
  return *this;
}

Jet operator+(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  const int order = std::min(a.order_, b.order_);
  Jet r(a.dim_, order);
  r.v_ = a.v_ + b.v_;
  if (order >= 1)
    for (std::size_t i = 0; i < r.g_.size(); ++i) r.g_[i] = a.g_[i] + b.g_[i];
  if (order >= 2)
    for (std::size_t i = 0; i < r.h_.size(); ++i) r.h_[i] = a.h_[i] + b.h_[i];
  if (order >= 3)
    for (std::size_t i = 0; i < r.t_.size(); ++i) r.t_[i] = a.t_[i] + b.t_[i];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  const int order = std::min(a.order_, b.order_);
  Jet r(a.dim_, order);
  r.v_ = a.v_ - b.v_;
  if (order >= 1)
    for (std::size_t i = 0; i < r.g_.size(); ++i) r.g_[i] = a.g_[i] - b.g_[i];
  if (order >= 2)
    for (std::size_t i = 0; i < r.h_.size(); ++i) r.h_[i] = a.h_[i] - b.h_[i];
  if (order >= 3)
    for (std::size_t i = 0; i < r.t_.size(); ++i) r.t_[i] = a.t_[i] - b.t_[i];
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  const int order = std::min(a.order_, b.order_);
  const int d = a.dim_;
  Jet r(d, order);
  r.v_ = a.v_ * b.v_;
  if (order >= 1) {
    for (int i = 0; i < d; ++i) {
      r.ref1(i) = a.g_[i] * b.v_ + a.v_ * b.g_[i];
    }
  }
  if (order >= 2) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        r.ref2(i, j) = a.h_[static_cast<std::size_t>(i * d + j)] * b.v_ +
                       a.g_[i] * b.g_[j] + a.g_[j] * b.g_[i] +
                       a.v_ * b.h_[static_cast<std::size_t>(i * d + j)];
      }
    }
  }
  if (order >= 3) {
    auto ah = [&](int i, int j) { return a.h_[static_cast<std::size_t>(i * d + j)]; };
    auto bh = [&](int i, int j) { return b.h_[static_cast<std::size_t>(i * d + j)]; };
    auto at = [&](int i, int j, int k) {
      return a.t_[static_cast<std::size_t>((i * d + j) * d + k)];
    };
    auto bt = [&](int i, int j, int k) {
      return b.t_[static_cast<std::size_t>((i * d + j) * d + k)];
    };
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          r.ref3(i, j, k) = at(i, j, k) * b.v_ + ah(i, j) * b.g_[k] +
                            ah(i, k) * b.g_[j] + ah(j, k) * b.g_[i] +
                            a.g_[i] * bh(j, k) + a.g_[j] * bh(i, k) +
                            a.g_[k] * bh(i, j) + a.v_ * bt(i, j, k);
        }
      }
    }
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

Jet operator+(const Jet& a, double s) {
  Jet r = a;
  r.value() += s;
  return r;
}
Jet operator+(double s, const Jet& a) { return a + s; }
Jet operator-(const Jet& a, double s) { return a + (-s); }
Jet operator-(double s, const Jet& a) { return (-a) + s; }

Jet operator*(const Jet& a, double s) {
  return compose(a, a.value() * s, s, 0.0, 0.0);
}
Jet operator*(double s, const Jet& a) { return a * s; }
Jet operator/(const Jet& a, double s) {
  if (s == 0.0) throw DomainError("division by zero");
  return a * (1.0 / s);
}
Jet operator/(double s, const Jet& a) { return reciprocal(a) * s; }

Jet compose(const Jet& u, double f0, double f1, double f2, double f3) {
  const int d = u.dim_;
  const int order = u.order_;
  Jet r(d, order);
  r.v_ = f0;
  if (order >= 1) {
    for (int i = 0; i < d; ++i) r.ref1(i) = f1 * u.g_[i];
  }
  if (order >= 2) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        r.ref2(i, j) = f2 * u.g_[i] * u.g_[j] +
                       f1 * u.h_[static_cast<std::size_t>(i * d + j)];
      }
    }
  }
  if (order >= 3) {
    auto uh = [&](int i, int j) { return u.h_[static_cast<std::size_t>(i * d + j)]; };
    auto ut = [&](int i, int j, int k) {
      return u.t_[static_cast<std::size_t>((i * d + j) * d + k)];
    };
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          r.ref3(i, j, k) =
              f3 * u.g_[i] * u.g_[j] * u.g_[k] +
              f2 * (uh(i, j) * u.g_[k] + uh(i, k) * u.g_[j] + uh(j, k) * u.g_[i]) +
              f1 * ut(i, j, k);
        }
      }
    }
  }
  return r;
}

Jet exp(const Jet& u) {
  const double e = std::exp(u.value());
  return compose(u, e, e, e, e);
}

Jet log(const Jet& u) {
  const double v = u.value();
  if (v <= 0.0) throw DomainError("log of non-positive value " + std::to_string(v));
  return compose(u, std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

Jet sqrt(const Jet& u) {
  const double v = u.value();
  if (v < 0.0) throw DomainError("sqrt of negative value " + std::to_string(v));
  if (v == 0.0) {
    if (u.order() > 0) throw DomainError("sqrt derivative singular at 0");
    return Jet::constant(u.dim(), 0, 0.0);
  }
  const double s = std::sqrt(v);
  return compose(u, s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v));
}

Jet sin(const Jet& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  return compose(u, s, c, -s, -c);
}

Jet cos(const Jet& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  return compose(u, c, -s, -c, s);
}

Jet reciprocal(const Jet& u) {
  const double v = u.value();
  if (v == 0.0) throw DomainError("division by zero");
  const double iv = 1.0 / v;
  return compose(u, iv, -iv * iv, 2.0 * iv * iv * iv, -6.0 * iv * iv * iv * iv);
}

Jet pow_rational(const Jet& u, long long p, long long q) {
  if (q == 0) throw DomainError("pow with zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const double v = u.value();
  const bool integral = (q == 1);
  if (integral) {
    // Polynomial / Laurent cases keep exact closed-form derivatives.
    if (p == 0) return Jet::constant(u.dim(), u.order(), 1.0);
    if (v == 0.0 && p < 0) throw DomainError("negative power of zero");
    const double r = static_cast<double>(p);
    double f0 = std::pow(v, r);
    double f1 = (p >= 1 || v != 0.0) ? r * std::pow(v, r - 1) : 0.0;
    double f2 = (p >= 2 || v != 0.0) ? r * (r - 1) * std::pow(v, r - 2) : 0.0;
    double f3 = (p >= 3 || v != 0.0) ? r * (r - 1) * (r - 2) * std::pow(v, r - 3) : 0.0;
    if (v == 0.0) {
      f1 = (p == 1) ? 1.0 : 0.0;
      f2 = (p == 2) ? 2.0 : 0.0;
      f3 = (p == 3) ? 6.0 : 0.0;
    }
    return compose(u, f0, f1, f2, f3);
  }
  if (v <= 0.0) {
    throw DomainError("fractional power of non-positive value " + std::to_string(v));
  }
  const double r = static_cast<double>(p) / static_cast<double>(q);
  const double f0 = std::pow(v, r);
  const double f1 = r * std::pow(v, r - 1);
  const double f2 = r * (r - 1) * std::pow(v, r - 2);
  const double f3 = r * (r - 1) * (r - 2) * std::pow(v, r - 3);
  return compose(u, f0, f1, f2, f3);
}

JetMat jet_mat_inverse(const JetMat& m, int n) {
  if (static_cast<int>(m.size()) != n * n) throw Error("jet_mat_inverse: bad shape");
  JetMat a = m;
  JetMat inv(static_cast<std::size_t>(n * n));
  const int dim = m[0].dim();
  const int order = m[0].order();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      inv[static_cast<std::size_t>(i * n + j)] =
          Jet::constant(dim, order, i == j ? 1.0 : 0.0);
    }
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(a[static_cast<std::size_t>(col * n + col)].value());
    for (int r = col + 1; r < n; ++r) {
      const double cand = std::abs(a[static_cast<std::size_t>(r * n + col)].value());
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best < 1e-300) throw SingularMetric("singular matrix in jet inversion");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a[static_cast<std::size_t>(col * n + j)],
                  a[static_cast<std::size_t>(pivot * n + j)]);
        std::swap(inv[static_cast<std::size_t>(col * n + j)],
                  inv[static_cast<std::size_t>(pivot * n + j)]);
      }
    }
    const Jet inv_pivot = reciprocal(a[static_cast<std::size_t>(col * n + col)]);
    for (int j = 0; j < n; ++j) {
      a[static_cast<std::size_t>(col * n + j)] =
          a[static_cast<std::size_t>(col * n + j)] * inv_pivot;
      inv[static_cast<std::size_t>(col * n + j)] =
          inv[static_cast<std::size_t>(col * n + j)] * inv_pivot;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Jet factor = a[static_cast<std::size_t>(r * n + col)];
      for (int j = 0; j < n; ++j) {
        a[static_cast<std::size_t>(r * n + j)] =
            a[static_cast<std::size_t>(r * n + j)] -
            factor * a[static_cast<std::size_t>(col * n + j)];
        inv[static_cast<std::size_t>(r * n + j)] =
            inv[static_cast<std::size_t>(r * n + j)] -
            factor * inv[static_cast<std::size_t>(col * n + j)];
      }
    }
  }
  return inv;
}

Jet jet_mat_det(const JetMat& m, int n) {
  if (static_cast<int>(m.size()) != n * n) throw Error("jet_mat_det: bad shape");
  JetMat a = m;
  const int dim = m[0].dim();
  const int order = m[0].order();
  Jet det = Jet::constant(dim, order, 1.0);
  double sign = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(a[static_cast<std::size_t>(col * n + col)].value());
    for (int r = col + 1; r < n; ++r) {
      const double cand = std::abs(a[static_cast<std::size_t>(r * n + col)].value());
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best < 1e-300) return Jet::constant(dim, order, 0.0);
    if (pivot != col) {
      sign = -sign;
      for (int j = 0; j < n; ++j) {
        std::swap(a[static_cast<std::size_t>(col * n + j)],
                  a[static_cast<std::size_t>(pivot * n + j)]);
      }
    }
    const Jet p = a[static_cast<std::size_t>(col * n + col)];
    det = det * p;
    const Jet inv_pivot = reciprocal(p);
    for (int r = col + 1; r < n; ++r) {
      const Jet factor = a[static_cast<std::size_t>(r * n + col)] * inv_pivot;
      for (int j = col; j < n; ++j) {
        a[static_cast<std::size_t>(r * n + j)] =
            a[static_cast<std::size_t>(r * n + j)] -
            factor * a[static_cast<std::size_t>(col * n + j)];
      }
    }
  }
  return det * sign;
}

}  // namespace tmk
