#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "tmk/expr.hpp"
#include "tmk/jet.hpp"

using namespace tmk;
using tmk::testing::close;

TEST_CASE("exp jet at zero carries unit derivatives to order 3") {
  const ExprPtr e = parse_expr("exp(x1)", 1);
  const double x[1] = {0.0};
  const Jet j = eval_jet(e, x, 3);
  CHECK(j.value() == doctest::Approx(1.0));
  CHECK(j.d1(0) == doctest::Approx(1.0));
  CHECK(j.d2(0, 0) == doctest::Approx(1.0));
  CHECK(j.d3(0, 0, 0) == doctest::Approx(1.0));
}

TEST_CASE("bilinear product jet") {
  const ExprPtr e = parse_expr("x1*x2", 2);
  const double x[2] = {2.0, 3.0};
  const Jet j = eval_jet(e, x, 2);
  CHECK(j.value() == doctest::Approx(6.0));
  CHECK(j.d1(0) == doctest::Approx(3.0));
  CHECK(j.d1(1) == doctest::Approx(2.0));
  CHECK(j.d2(0, 1) == doctest::Approx(1.0));
  CHECK(j.d2(1, 0) == doctest::Approx(1.0));
  CHECK(j.d2(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("log at a singular input raises DomainError") {
  const ExprPtr e = parse_expr("log(x1)", 1);
  const double x[1] = {0.0};
  CHECK_THROWS_AS(eval_jet(e, x, 1), DomainError);
  CHECK_THROWS_AS(eval_value(e, x), DomainError);
}

TEST_CASE("division by zero raises DomainError") {
  const ExprPtr e = parse_expr("x1/x2", 2);
  const double x[2] = {1.0, 0.0};
  CHECK_THROWS_AS(eval_jet(e, x, 1), DomainError);
}

TEST_CASE("derivatives beyond the stored order raise OrderExceeded") {
  const Jet j = Jet::coordinate(2, 1, 0, 1.5);
  CHECK(j.d1(0) == 1.0);
  CHECK_THROWS_AS(j.d2(0, 0), OrderExceeded);
  CHECK_THROWS_AS(j.d3(0, 0, 0), OrderExceeded);
}

TEST_CASE("hessian and third slots are symmetric for composite expressions") {
  const ExprPtr e = parse_expr("sin(x1*x2) + exp(x1)*log(2 + x2)", 2);
  const double x[2] = {0.7, -0.3};
  const Jet j = eval_jet(e, x, 3);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      CHECK(j.d2(a, b) == doctest::Approx(j.d2(b, a)));
      for (int c = 0; c < 2; ++c) {
        CHECK(j.d3(a, b, c) == doctest::Approx(j.d3(b, a, c)));
        CHECK(j.d3(a, b, c) == doctest::Approx(j.d3(a, c, b)));
      }
    }
}

TEST_CASE("jet partials match finite differences of the plain evaluation") {
  // 200 seeded random expressions; probes inside [-1,1]^n; the generated
  // grammar keeps log/sqrt arguments positive.  Steps cascade with the
  // derivative order (1e-5, 1e-4, 2e-3 + Richardson).
  Rng rng(20240817);
  int accepted = 0;
  int guard = 0;
  while (accepted < 200 && guard < 1000) {
    ++guard;
    const int n = 1 + static_cast<int>(rng.unit() * 3);
    const std::string src = tmk::testing::random_expr_string(rng, n, 3);
    const ExprPtr e = parse_expr(src, n);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = rng.uniform(-1.0, 1.0);

    Jet j;
    try {
      j = eval_jet(e, x, 3);
    } catch (const DomainError&) {
      continue;
    }
    // keep magnitudes in a range where the FD stencils are trustworthy
    bool wild = std::abs(j.value()) > 50.0;
    for (int a = 0; a < n && !wild; ++a)
      for (int b = 0; b < n && !wild; ++b)
        for (int c = 0; c < n && !wild; ++c)
          if (std::abs(j.d3(a, b, c)) > 50.0) wild = true;
    if (wild) continue;
    ++accepted;

    auto f = [&](const std::vector<double>& p) { return eval_value(e, p); };
    for (int a = 0; a < n; ++a) {
      CHECK(close(j.d1(a), tmk::testing::fd_grad(f, x, a), 1e-6));
      for (int b = 0; b < n; ++b) {
        CHECK(close(j.d2(a, b), tmk::testing::fd_hess(f, x, a, b), 1e-6));
        for (int c = 0; c < n; ++c) {
          CHECK(close(j.d3(a, b, c), tmk::testing::fd_third(f, x, a, b, c), 1e-6));
        }
      }
    }
  }
  CHECK(accepted == 200);
}

TEST_CASE("jet arithmetic is associative and commutative") {
  Rng rng(42);
  auto random_jet = [&](int n) {
    Jet j(n, 3);
    j.value() = rng.uniform(-2, 2);
    for (int a = 0; a < n; ++a) {
      j.ref1(a) = rng.uniform(-2, 2);
      for (int b = 0; b < n; ++b) {
        const double h = rng.uniform(-2, 2);
        j.ref2(a, b) = h;
        j.ref2(b, a) = h;
        for (int c = 0; c < n; ++c) {
          const double t = rng.uniform(-2, 2);
          j.ref3(a, b, c) = t;
          j.ref3(a, c, b) = t;
          j.ref3(b, a, c) = t;
          j.ref3(b, c, a) = t;
          j.ref3(c, a, b) = t;
          j.ref3(c, b, a) = t;
        }
      }
    }
    return j;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2;
    const Jet a = random_jet(n), b = random_jet(n), c = random_jet(n);
    const Jet ab_c = (a * b) * c;
    const Jet a_bc = a * (b * c);
    const Jet ab = a * b, ba = b * a;
    const Jet apb = a + b, bpa = b + a;
    const Jet apb_c = (a + b) + c, a_bpc = a + (b + c);
    for (int i = 0; i < n; ++i) {
      CHECK(close(ab_c.d1(i), a_bc.d1(i), 1e-12));
      CHECK(ab.d1(i) == ba.d1(i));
      CHECK(apb.d1(i) == bpa.d1(i));
      CHECK(close(apb_c.d1(i), a_bpc.d1(i), 1e-12));
      for (int jj = 0; jj < n; ++jj)
        for (int k = 0; k < n; ++k) {
          CHECK(close(ab_c.d3(i, jj, k), a_bc.d3(i, jj, k), 1e-12));
          // same terms, different summation order: equal to rounding
          CHECK(close(ab.d3(i, jj, k), ba.d3(i, jj, k), 1e-13));
        }
    }
    CHECK(close(ab_c.value(), a_bc.value(), 1e-14));
  }
}

TEST_CASE("jet matrix inverse solves to the identity with zero derivatives") {
  Rng rng(7);
  const int n = 3;
  const double x[3] = {0.4, -0.2, 0.9};
  // random symmetric diagonally dominant expression matrix
  std::vector<ExprPtr> exprs(9);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::string s = (i == j) ? "3 + sin(x" + std::to_string(i + 1) + ")"
                               : "0.3*cos(x" + std::to_string(i + 1) + "*x" +
                                     std::to_string(j + 1) + ")";
      exprs[static_cast<std::size_t>(i * n + j)] = parse_expr(s, n);
      exprs[static_cast<std::size_t>(j * n + i)] = exprs[static_cast<std::size_t>(i * n + j)];
    }
  JetMat m;
  for (auto& e : exprs) m.push_back(eval_jet(e, x, 2));
  const JetMat inv = jet_mat_inverse(m, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet acc = Jet::constant(n, 2, 0.0);
      for (int k = 0; k < n; ++k)
        acc += m[static_cast<std::size_t>(i * n + k)] * inv[static_cast<std::size_t>(k * n + j)];
      CHECK(close(acc.value(), i == j ? 1.0 : 0.0, 1e-12));
      for (int a = 0; a < n; ++a) {
        CHECK(close(acc.d1(a), 0.0, 1e-12));
        for (int bb = 0; bb < n; ++bb) CHECK(close(acc.d2(a, bb), 0.0, 1e-11));
      }
    }
  (void)rng;
}

TEST_CASE("jet determinant matches the analytic determinant derivative") {
  // det of diag(e^{x1}, e^{x2}) is e^{x1+x2}; all partials equal the value.
  const double x[2] = {0.3, -0.1};
  std::vector<ExprPtr> exprs = {parse_expr("exp(x1)", 2), Expr::make_number(0.0),
                                Expr::make_number(0.0), parse_expr("exp(x2)", 2)};
  JetMat m;
  for (auto& e : exprs) m.push_back(eval_jet(e, x, 2));
  const Jet det = jet_mat_det(m, 2);
  const double expected = std::exp(x[0] + x[1]);
  CHECK(close(det.value(), expected, 1e-14));
  CHECK(close(det.d1(0), expected, 1e-14));
  CHECK(close(det.d2(0, 1), expected, 1e-14));
}
