#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "tmk/models.hpp"
#include "tmk/symplectic.hpp"

using namespace tmk;
using tmk::testing::close;

namespace {

Model random_model(Rng& rng, int n, bool torsion_free_gamma) {
  const Box box(static_cast<std::size_t>(n), std::array<double, 2>{-0.6, 0.6});
  return build_custom(tmk::testing::random_metric_exprs(rng, n),
                      tmk::testing::random_gamma_exprs(rng, n, torsion_free_gamma), n,
                      box);
}

}  // namespace

TEST_CASE("pullback_form_at: Euclidean metric gives the standard symplectic form") {
  const Model e = euclidean_plane();
  const Mat p = pullback_form_at(*e.g, TangentPoint{{0.4, -0.8}, {2.0, 3.0}});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(p(i, j) == 0.0);
      CHECK(p(2 + i, 2 + j) == 0.0);
      CHECK(p(i, 2 + j) == (i == j ? 1.0 : 0.0));
    }
}

TEST_CASE("pullback_form_at: diagonal own-coordinate metric keeps the xx block zero") {
  const Model m = exp_diag_hessian();
  const Mat p = pullback_form_at(*m.g, TangentPoint{{0.3, -0.5}, {1.0, 1.0}});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(p(i, j) == doctest::Approx(0.0));
}

TEST_CASE("pullback form is antisymmetric and closed") {
  Rng rng(20240605);
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + (t % 2);
    const Model m = random_model(rng, n, t % 2 == 0);
    TangentPoint p;
    p.x.assign(static_cast<std::size_t>(n), 0.0);
    p.xi.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      p.x[static_cast<std::size_t>(i)] = rng.uniform(-0.5, 0.5);
      p.xi[static_cast<std::size_t>(i)] = rng.uniform(-1, 1);
    }
    const Mat pb = pullback_form_at(*m.g, p);
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b) CHECK(pb(a, b) == doctest::Approx(-pb(b, a)));
    CHECK(pullback_closedness_residual(*m.g, p) <= 1e-9);
  }
}

TEST_CASE("pullback deviation equals the lowered-index identity contracted with y") {
  Rng rng(20240606);
  const Model m = random_model(rng, 2, false);
  TangentPoint p{{0.2, -0.3}, {0.9, -0.6}};
  const Mat pb = pullback_form_at(*m.g, p);
  const Mat om = kahler_form_chart(*m.g, *m.D, p);
  const JetMat gj = m.g->components(p.x, 1);
  const JetMat cj = m.D->components(p.x, 0);
  const int n = 2;
  auto G = [&](int i, int j) { return gj[static_cast<std::size_t>(i * n + j)]; };
  auto C = [&](int k, int i, int j) {
    return cj[static_cast<std::size_t>((k * n + i) * n + j)].value();
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double expected = 0.0;
      for (int k = 0; k < n; ++k) {
        double lhs = G(i, k).d1(j) - G(j, k).d1(i);
        double rhs = 0.0;
        for (int l = 0; l < n; ++l) rhs += C(l, j, k) * G(l, i).value() - C(l, i, k) * G(l, j).value();
        expected += (lhs - rhs) * p.xi[static_cast<std::size_t>(k)];
      }
      CHECK(close(pb(i, j) - om(i, j), expected, 1e-12));
    }
}

TEST_CASE("symplectic_match on the three reference configurations") {
  SampleSpec spec;
  spec.seed = 41;
  spec.count = 10;
  spec.box = {{-1.0, 1.0}, {-1.0, 1.0}};

  // Hessian pair: dual torsion-free, forms coincide
  {
    const Model m = exp_diag_hessian();
    const SymplecticMatch sm = symplectic_match(*m.g, *m.D, spec);
    CHECK(sm.matches);
    CHECK(sm.max_deviation <= 1e-10);
    CHECK(sm.torsion_Dstar <= 1e-10);
  }
  // torsionful dual: the xx block opens up
  {
    const Box box(2, std::array<double, 2>{-1.0, 1.0});
    std::vector<std::string> gamma(8, "0");
    gamma[(0 * 2 + 1) * 2 + 1] = "1";  // Γ^1_{22}
    const Model m = build_custom({"1", "0", "0", "1"}, gamma, 2, box);
    const SymplecticMatch sm = symplectic_match(*m.g, *m.D, spec);
    CHECK_FALSE(sm.matches);
    CHECK(sm.max_deviation >= 1e-3);
    CHECK(sm.torsion_Dstar >= 1e-3);
  }
  // Levi-Civita pair: self-dual, always matches
  {
    Rng rng(43);
    const Model base = random_model(rng, 2, true);
    const auto lc = std::make_shared<LeviCivitaConnection>(base.g);
    const SymplecticMatch sm = symplectic_match(*base.g, *lc, spec);
    CHECK(sm.matches);
    CHECK(sm.max_deviation <= 1e-10);
  }
}
