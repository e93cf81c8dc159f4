#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "tmk/expr.hpp"
#include "tmk/sampling.hpp"

namespace tmk::testing {

inline bool close(double a, double b, double tol, double floor = 1.0) {
  return std::abs(a - b) <= tol * std::max({floor, std::abs(a), std::abs(b)});
}

// --- finite-difference oracles over a scalar function -----------------------

using ScalarFn = std::function<double(const std::vector<double>&)>;

inline double fd_grad(const ScalarFn& f, std::vector<double> x, int i, double h = 1e-5) {
  x[static_cast<std::size_t>(i)] += h;
  const double fp = f(x);
  x[static_cast<std::size_t>(i)] -= 2 * h;
  const double fm = f(x);
  return (fp - fm) / (2 * h);
}

inline double fd_hess(const ScalarFn& f, std::vector<double> x, int i, int j,
                      double h = 1e-4) {
  auto at = [&](double si, double sj) {
    std::vector<double> y = x;
    y[static_cast<std::size_t>(i)] += si * h;
    y[static_cast<std::size_t>(j)] += sj * h;
    return f(y);
  };
  return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * h * h);
}

// Product stencil for third derivatives with one Richardson step.
inline double fd_third(const ScalarFn& f, const std::vector<double>& x, int i, int j,
                       int k, double h = 2e-3) {
  auto stencil = [&](double hh) {
    double acc = 0.0;
    for (int si = -1; si <= 1; si += 2)
      for (int sj = -1; sj <= 1; sj += 2)
        for (int sk = -1; sk <= 1; sk += 2) {
          std::vector<double> y = x;
          y[static_cast<std::size_t>(i)] += si * hh;
          y[static_cast<std::size_t>(j)] += sj * hh;
          y[static_cast<std::size_t>(k)] += sk * hh;
          acc += si * sj * sk * f(y);
        }
    return acc / (8 * hh * hh * hh);
  };
  const double coarse = stencil(h);
  const double fine = stencil(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

// --- seeded random closed-form expressions ----------------------------------

// log/sqrt arguments are wrapped positive, exp arguments bounded; the
// resulting trees stay finite on [-1, 1]^n.
inline std::string random_expr_string(Rng& rng, int n, int depth) {
  auto coord = [&]() {
    return "x" + std::to_string(1 + static_cast<int>(rng.unit() * n) % n);
  };
  auto num = [&]() {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", 0.2 + 2.0 * rng.unit());
    return std::string(buf);
  };
  if (depth <= 0) {
    return rng.unit() < 0.5 ? coord() : num();
  }
  const double pick = rng.unit();
  const std::string a = random_expr_string(rng, n, depth - 1);
  if (pick < 0.16) {
    const std::string b = random_expr_string(rng, n, depth - 1);
    return "(" + a + " + " + b + ")";
  }
  if (pick < 0.32) {
    const std::string b = random_expr_string(rng, n, depth - 1);
    return "(" + a + " - " + b + ")";
  }
  if (pick < 0.48) {
    const std::string b = random_expr_string(rng, n, depth - 1);
    return "(" + a + ")*(" + b + ")";
  }
  if (pick < 0.56) {
    // strictly positive denominator
    return "(" + a + ")/(2.25 + sin(" + coord() + "))";
  }
  if (pick < 0.66) return "sin(" + a + ")";
  if (pick < 0.76) return "cos(" + a + ")";
  if (pick < 0.84) return "exp(0.3*sin(" + a + "))";
  if (pick < 0.92) return "log(2 + 0.5*sin(" + a + "))";
  if (pick < 0.97) return "sqrt(2 + 0.5*cos(" + a + "))";
  return "pow(2 + 0.5*sin(" + a + "), 2/3)";
}

// --- seeded random fields ----------------------------------------------------

// Diagonally dominant symmetric metric expressions, positive definite on
// [-0.6, 0.6]^n.
inline std::vector<std::string> random_metric_exprs(Rng& rng, int n) {
  std::vector<std::string> out(static_cast<std::size_t>(n) * n, "0");
  auto trig = [&](int i, int j) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.3f*sin(x%d + %.3f*x%d)",
                  0.1 + 0.15 * rng.unit(), i + 1, 0.5 + rng.unit(), j + 1);
    return std::string(buf);
  };
  for (int i = 0; i < n; ++i) {
    char diag[128];
    std::snprintf(diag, sizeof(diag), "%.3f + %.3f*cos(x%d) + %s",
                  1.5 + rng.unit(), 0.2 + 0.2 * rng.unit(), (i % n) + 1,
                  trig(i, (i + 1) % n).c_str());
    out[static_cast<std::size_t>(i * n + i)] = diag;
    for (int j = i + 1; j < n; ++j) {
      const std::string off = trig(i, j);
      out[static_cast<std::size_t>(i * n + j)] = off;
      out[static_cast<std::size_t>(j * n + i)] = off;
    }
  }
  return out;
}

// Small random connection coefficients; symmetric in the lower pair when
// torsion_free is set.
inline std::vector<std::string> random_gamma_exprs(Rng& rng, int n, bool torsion_free) {
  std::vector<std::string> out(static_cast<std::size_t>(n) * n * n, "0");
  auto entry = [&](int k, int i) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.3f*cos(x%d + %.3f*x%d)",
                  -0.3 + 0.6 * rng.unit(), k + 1, 0.4 + rng.unit(), i + 1);
    return std::string(buf);
  };
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = torsion_free ? i : 0; j < n; ++j) {
        const std::string e = entry(k, (i + j) % n);
        out[static_cast<std::size_t>((k * n + i) * n + j)] = e;
        if (torsion_free) out[static_cast<std::size_t>((k * n + j) * n + i)] = e;
      }
  return out;
}

}  // namespace tmk::testing
