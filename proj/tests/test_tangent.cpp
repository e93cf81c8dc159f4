#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "tmk/classify.hpp"
#include "tmk/models.hpp"
#include "tmk/tangent.hpp"

using namespace tmk;
using tmk::testing::close;

namespace {

Model random_model(Rng& rng, int n, bool torsion_free_gamma) {
  const Box box(static_cast<std::size_t>(n), std::array<double, 2>{-0.6, 0.6});
  return build_custom(tmk::testing::random_metric_exprs(rng, n),
                      tmk::testing::random_gamma_exprs(rng, n, torsion_free_gamma), n,
                      box);
}

TangentPoint random_tangent_point(Rng& rng, int n, double lo = -0.5, double hi = 0.5) {
  TangentPoint p;
  p.x.resize(static_cast<std::size_t>(n));
  p.xi.resize(static_cast<std::size_t>(n));
  for (double& v : p.x) v = rng.uniform(lo, hi);
  for (double& v : p.xi) v = rng.uniform(-1.0, 1.0);
  return p;
}

Vec random_vec(Rng& rng, int n) {
  Vec v(static_cast<std::size_t>(n));
  for (double& c : v) c = rng.uniform(-1.0, 1.0);
  return v;
}

Vec lift_vector(const LiftedFrame& f, const Vec& X, bool horizontal) {
  const Mat& rows = horizontal ? f.horizontal : f.vertical;
  Vec out(static_cast<std::size_t>(rows.cols), 0.0);
  for (int i = 0; i < rows.rows; ++i)
    for (int a = 0; a < rows.cols; ++a)
      out[static_cast<std::size_t>(a)] += X[static_cast<std::size_t>(i)] * rows(i, a);
  return out;
}

double oracle_r4(const SasakiOracle& o, const Vec& A, const Vec& B, const Vec& C,
                 const Vec& D) {
  double s = 0.0;
  const int d = o.d;
  for (int w = 0; w < d; ++w)
    for (int z = 0; z < d; ++z)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          s += o.riemann04(w, z, i, j) * A[static_cast<std::size_t>(w)] *
               B[static_cast<std::size_t>(z)] * C[static_cast<std::size_t>(i)] *
               D[static_cast<std::size_t>(j)];
  return s;
}

double mat_quad(const Mat& m, const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      s += m(i, j) * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  return s;
}

}  // namespace

TEST_CASE("lift_frame: flat connection or zero fiber gives coordinate lifts") {
  const Model e = euclidean_plane();
  const LiftedFrame f = lift_frame(*e.D, TangentPoint{{0.2, 0.3}, {1.0, -2.0}});
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < 4; ++a) CHECK(f.horizontal(i, a) == (a == i ? 1.0 : 0.0));

  const Model s = unit_sphere_levi_civita();
  const LiftedFrame f0 = lift_frame(*s.D, TangentPoint{{1.0, 2.0}, {0.0, 0.0}});
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < 4; ++a) CHECK(f0.horizontal(i, a) == (a == i ? 1.0 : 0.0));
}

TEST_CASE("lift_frame: frame matrix is invertible on a curved model") {
  const Model s = unit_sphere_levi_civita();
  Rng rng(3);
  for (int t = 0; t < 5; ++t) {
    TangentPoint p = random_tangent_point(rng, 2);
    p.x = {rng.uniform(0.4, 2.7), rng.uniform(0.0, 6.0)};
    const LiftedFrame f = lift_frame(*s.D, p);
    Mat frame(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int a = 0; a < 4; ++a) {
        frame(i, a) = f.horizontal(i, a);
        frame(2 + i, a) = f.vertical(i, a);
      }
    CHECK(std::abs(mat_det(frame)) > 1e-8);
  }
}

TEST_CASE("sasaki_metric_chart: Euclidean gives the identity on TM") {
  const Model e = euclidean_plane();
  const Mat m = sasaki_metric_chart(*e.g, *e.D, TangentPoint{{0.7, -0.1}, {2.0, 5.0}});
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(m(a, b) == doctest::Approx(a == b ? 1.0 : 0.0));
}

TEST_CASE("sasaki_metric_chart: frame pullback is block diagonal") {
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + (t % 2);
    const Model m = random_model(rng, n, t % 2 == 0);
    const TangentPoint p = random_tangent_point(rng, n);
    const Mat gt = sasaki_metric_chart(*m.g, *m.D, p);
    const LiftedFrame f = lift_frame(*m.D, p);
    const JetMat gj = m.g->components(p.x, 0);
    auto G = [&](int i, int j) { return gj[static_cast<std::size_t>(i * n + j)].value(); };
    for (int i = 0; i < n; ++i) {
      Vec hi = lift_vector(f, [&] { Vec v(static_cast<std::size_t>(n), 0.0); v[static_cast<std::size_t>(i)] = 1; return v; }(), true);
      Vec vi = lift_vector(f, [&] { Vec v(static_cast<std::size_t>(n), 0.0); v[static_cast<std::size_t>(i)] = 1; return v; }(), false);
      for (int j = 0; j < n; ++j) {
        Vec hj = lift_vector(f, [&] { Vec v(static_cast<std::size_t>(n), 0.0); v[static_cast<std::size_t>(j)] = 1; return v; }(), true);
        Vec vj = lift_vector(f, [&] { Vec v(static_cast<std::size_t>(n), 0.0); v[static_cast<std::size_t>(j)] = 1; return v; }(), false);
        CHECK(close(mat_quad(gt, hi, hj), G(i, j), 1e-12));
        CHECK(close(mat_quad(gt, vi, vj), G(i, j), 1e-12));
        CHECK(close(mat_quad(gt, hi, vj), 0.0, 1e-12));
      }
    }
  }
}

TEST_CASE("sasaki_metric_chart: one-dimensional Gaussian family at a base point") {
  RhoSpec spec;
  spec.m = 1;
  spec.n = 1;
  spec.basis = {Mat(1, 1)};
  spec.basis[0](0, 0) = 1.0;
  spec.domain_box = {{0.5, 2.0}};
  const StatisticalModel sm = build_statistical_model(spec);
  // chart (θ, ξ) = (0, 1): Hessian of ½(θ²/ξ - log ξ) is diag(1, ½)
  const TangentPoint p{{0.0, 1.0}, {0.0, 0.0}};
  const Model structure = sm.structure();
  const Mat gt = sasaki_metric_chart(*structure.g, *structure.D, p);
  Mat expected(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 1) = 0.5;
  expected(2, 2) = 1.0;
  expected(3, 3) = 0.5;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(close(gt(a, b), expected(a, b), 1e-12));
}

TEST_CASE("kahler_form_chart: flat connection gives the standard symplectic matrix") {
  const Model e = euclidean_plane();
  const Mat om = kahler_form_chart(*e.g, *e.D, TangentPoint{{0.0, 0.0}, {3.0, -1.0}});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(om(i, j) == 0.0);
      CHECK(om(2 + i, 2 + j) == 0.0);
      CHECK(om(i, 2 + j) == (i == j ? 1.0 : 0.0));
      CHECK(om(2 + j, i) == (i == j ? -1.0 : 0.0));
    }
}

TEST_CASE("kahler_form_chart equals the metric composed with J") {
  Rng rng(19);
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + (t % 2);
    const Model m = random_model(rng, n, t % 2 == 1);
    const TangentPoint p = random_tangent_point(rng, n);
    const Mat om = kahler_form_chart(*m.g, *m.D, p);
    const Mat gt = sasaki_metric_chart(*m.g, *m.D, p);
    const Mat J = almost_complex_chart(*m.D, p);
    const Mat jtg = mat_mul(mat_transpose(J), gt);  // Ω(a,b) = g̃(J e_a, e_b)
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b) {
        CHECK(close(om(a, b), jtg(a, b), 1e-12));
        CHECK(close(om(a, b), -om(b, a), 1e-15));
      }
  }
}

TEST_CASE("almost_complex_chart: squares to minus the identity") {
  const Model e = euclidean_plane();
  const Mat j0 = almost_complex_chart(*e.D, TangentPoint{{0.1, 0.2}, {0.5, 0.5}});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(j0(i, 2 + j) == (i == j ? -1.0 : 0.0));
      CHECK(j0(2 + i, j) == (i == j ? 1.0 : 0.0));
    }

  Rng rng(29);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + (t % 2);
    const Model m = random_model(rng, n, t % 2 == 0);
    const TangentPoint p = random_tangent_point(rng, n);
    const Mat J = almost_complex_chart(*m.D, p);
    const Mat J2 = mat_mul(J, J);
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b)
        CHECK(close(J2(a, b), a == b ? -1.0 : 0.0, 1e-13));
    // Hermitian compatibility
    const Mat gt = sasaki_metric_chart(*m.g, *m.D, p);
    const Mat jgj = mat_mul(mat_transpose(J), mat_mul(gt, J));
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b) CHECK(close(jgj(a, b), gt(a, b), 1e-12));
  }
}

TEST_CASE("d_omega_lifted: Hessian models close the Kähler form") {
  const Model m = exp_diag_hessian();
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    const TangentPoint p = random_tangent_point(rng, 2);
    const BasePointData b = make_base_point_data(*m.g, *m.D, p.x);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          Vec ei(2, 0.0), ej(2, 0.0), ek(2, 0.0);
          ei[static_cast<std::size_t>(i)] = ej[static_cast<std::size_t>(j)] = ek[static_cast<std::size_t>(k)] = 1.0;
          CHECK(std::abs(d_omega_lifted(b, p.xi, DOmegaSlots::HHH, ei, ej, ek)) <= 1e-10);
          CHECK(std::abs(d_omega_lifted(b, p.xi, DOmegaSlots::HHV, ei, ej, ek)) <= 1e-10);
        }
  }
}

TEST_CASE("d_omega_lifted: torsionful dual produces the exact component") {
  // g = I2, Γ¹₂₂ = 1: dΩ(∂₂^H, ∂₁^H, ∂₂^V) = -1.
  const Box box(2, std::array<double, 2>{-1.0, 1.0});
  std::vector<std::string> gamma(8, "0");
  gamma[(0 * 2 + 1) * 2 + 1] = "1";
  const Model m = build_custom({"1", "0", "0", "1"}, gamma, 2, box);
  Rng rng(37);
  const TangentPoint p = random_tangent_point(rng, 2);
  const BasePointData b = make_base_point_data(*m.g, *m.D, p.x);
  const Vec e1 = {1.0, 0.0}, e2 = {0.0, 1.0};
  CHECK(d_omega_lifted(b, p.xi, DOmegaSlots::HHV, e2, e1, e2) == doctest::Approx(-1.0));
  CHECK(d_omega_lifted(b, p.xi, DOmegaSlots::VVV, e2, e1, e2) == 0.0);
  CHECK(d_omega_lifted(b, p.xi, DOmegaSlots::HVV, e2, e1, e2) == 0.0);
}

TEST_CASE("d_omega_oracle matches the lifted formulas through the frame") {
  Rng rng(41);
  for (int t = 0; t < 12; ++t) {
    const int n = 2 + (t % 2);
    const Model m = random_model(rng, n, t % 3 == 0);
    const TangentPoint p = random_tangent_point(rng, n);
    const BasePointData b = make_base_point_data(*m.g, *m.D, p.x);
    const LiftedFrame f = lift_frame(*m.D, p);
    const Vec X = random_vec(rng, n), Y = random_vec(rng, n), Z = random_vec(rng, n);
    const Vec XH = lift_vector(f, X, true), YH = lift_vector(f, Y, true);
    const Vec ZH = lift_vector(f, Z, true);
    const Vec XV = lift_vector(f, X, false), YV = lift_vector(f, Y, false);
    const Vec ZV = lift_vector(f, Z, false);

    CHECK(close(d_omega_lifted(b, p.xi, DOmegaSlots::HHH, X, Y, Z),
                d_omega_oracle(*m.g, *m.D, p, XH, YH, ZH), 1e-9));
    CHECK(close(d_omega_lifted(b, p.xi, DOmegaSlots::HHV, X, Y, Z),
                d_omega_oracle(*m.g, *m.D, p, XH, YH, ZV), 1e-9));
    CHECK(close(d_omega_lifted(b, p.xi, DOmegaSlots::HVV, X, Y, Z),
                d_omega_oracle(*m.g, *m.D, p, XH, YV, ZV), 1e-9));
    CHECK(close(d_omega_lifted(b, p.xi, DOmegaSlots::VVV, X, Y, Z),
                d_omega_oracle(*m.g, *m.D, p, XV, YV, ZV), 1e-9));
  }
}

TEST_CASE("nijenhuis_at: flat, torsionful, and curved cases") {
  const Model e = euclidean_plane();
  Rng rng(43);
  {
    const TangentPoint p = random_tangent_point(rng, 2);
    const BasePointData b = make_base_point_data(*e.g, *e.D, p.x);
    const NijenhuisParts parts = nijenhuis_at(b, p.xi, {1, 0}, {0, 1});
    CHECK(max_abs(parts.horizontal) == 0.0);
    CHECK(max_abs(parts.vertical) == 0.0);
  }
  {
    const Box box(2, std::array<double, 2>{-1.0, 1.0});
    std::vector<std::string> gamma(8, "0");
    gamma[(0 * 2 + 0) * 2 + 1] = "1";  // Γ^1_{12}
    const Model m = build_custom({"1", "0", "0", "1"}, gamma, 2, box);
    const TangentPoint p = random_tangent_point(rng, 2);
    const BasePointData b = make_base_point_data(*m.g, *m.D, p.x);
    const NijenhuisParts parts = nijenhuis_at(b, p.xi, {1, 0}, {0, 1});
    CHECK(parts.horizontal[0] == doctest::Approx(1.0));
    CHECK(parts.horizontal[1] == doctest::Approx(0.0));
    CHECK(max_abs(parts.vertical) <= 1e-14);
  }
  {
    const Model s = unit_sphere_levi_civita();
    const TangentPoint p{{1.1, 0.7}, {0.8, -0.4}};
    const BasePointData b = make_base_point_data(*s.g, *s.D, p.x);
    const NijenhuisParts parts = nijenhuis_at(b, p.xi, {1, 0}, {0, 1});
    CHECK(max_abs(parts.horizontal) <= 1e-14);
    CHECK(max_abs(parts.vertical) > 1e-3);
  }
}

TEST_CASE("sasaki_curvature_lifted: flat model vanishes in every slot") {
  const Model e = euclidean_plane();
  Rng rng(47);
  const TangentPoint p = random_tangent_point(rng, 2);
  const BasePointData b = make_base_point_data(*e.g, *e.D, p.x);
  const Vec Z = random_vec(rng, 2), W = random_vec(rng, 2);
  const Vec X = random_vec(rng, 2), Y = random_vec(rng, 2);
  for (Slot4 slot : {Slot4::HHHH, Slot4::HVVV, Slot4::VVVV, Slot4::HVHH,
                     Slot4::VVHH, Slot4::HVHV}) {
    CHECK(sasaki_curvature_lifted(b, p.xi, slot, Z, W, X, Y) == doctest::Approx(0.0));
  }
}

TEST_CASE("sasaki_curvature_lifted: oracle equivalence across models") {
  Rng rng(20240901);
  std::vector<Model> models = {euclidean_plane(), exp_diag_hessian(),
                               unit_sphere_levi_civita()};
  for (int t = 0; t < 8; ++t) models.push_back(random_model(rng, 2 + (t % 2), t % 2 == 0));

  int checked = 0;
  for (const Model& m : models) {
    for (int rep = 0; rep < 3; ++rep) {
      TangentPoint p = random_tangent_point(rng, m.n);
      if (m.name == "unit-sphere") p.x = {rng.uniform(0.5, 2.6), rng.uniform(0.0, 6.0)};
      const BasePointData b = make_base_point_data(*m.g, *m.D, p.x);
      const SasakiOracle o = sasaki_oracle(*m.g, *m.D, p);
      const LiftedFrame f = lift_frame(*m.D, p);
      const double scale = std::max(1.0, o.riemann04.sup_abs());
      const Vec Z = random_vec(rng, m.n), W = random_vec(rng, m.n);
      const Vec X = random_vec(rng, m.n), Y = random_vec(rng, m.n);

      auto lv = [&](const Vec& v, bool h) { return lift_vector(f, v, h); };
      struct Pattern {
        Slot4 slot;
        bool h[4];
      };
      const Pattern patterns[] = {
          {Slot4::HHHH, {true, true, true, true}},
          {Slot4::HVVV, {true, false, false, false}},
          {Slot4::VVVV, {false, false, false, false}},
          {Slot4::HVHH, {true, false, true, true}},
          {Slot4::VVHH, {false, false, true, true}},
          {Slot4::HVHV, {true, false, true, false}},
      };
      for (const Pattern& pat : patterns) {
        const double lifted =
            sasaki_curvature_lifted(b, p.xi, pat.slot, Z, W, X, Y);
        const double oracle = oracle_r4(o, lv(Z, pat.h[0]), lv(W, pat.h[1]),
                                        lv(X, pat.h[2]), lv(Y, pat.h[3]));
        CHECK(std::abs(lifted - oracle) <=
              1e-8 * std::max({1.0, scale, std::abs(lifted), std::abs(oracle)}));
      }
      ++checked;
    }
  }
  CHECK(checked >= 30);
}

TEST_CASE("sasaki_curvature_lifted: VVVV slot dies when the metric is D-parallel") {
  // Levi-Civita connections have Dg = 0.
  Rng rng(53);
  const Model base = random_model(rng, 2, true);
  const auto lc = std::make_shared<LeviCivitaConnection>(base.g);
  const TangentPoint p = random_tangent_point(rng, 2);
  const BasePointData b = make_base_point_data(*base.g, *lc, p.x);
  const Vec Z = random_vec(rng, 2), W = random_vec(rng, 2);
  const Vec X = random_vec(rng, 2), Y = random_vec(rng, 2);
  CHECK(std::abs(sasaki_curvature_lifted(b, p.xi, Slot4::VVVV, Z, W, X, Y)) <= 1e-12);
}

TEST_CASE("sasaki_ricci_lifted: oracle equivalence and the Hessian identity") {
  Rng rng(20240902);
  std::vector<Model> models = {exp_diag_hessian(), unit_sphere_levi_civita()};
  for (int t = 0; t < 6; ++t) models.push_back(random_model(rng, 2, t % 2 == 0));

  for (const Model& m : models) {
    for (int rep = 0; rep < 3; ++rep) {
      TangentPoint p = random_tangent_point(rng, m.n);
      if (m.name == "unit-sphere") p.x = {rng.uniform(0.5, 2.6), rng.uniform(0.0, 6.0)};
      const BasePointData b = make_base_point_data(*m.g, *m.D, p.x);
      const SasakiOracle o = sasaki_oracle(*m.g, *m.D, p);
      const LiftedFrame f = lift_frame(*m.D, p);
      const double scale = std::max(1.0, max_abs(o.ricci));
      const Vec X = random_vec(rng, m.n), Y = random_vec(rng, m.n);

      auto ric_oracle = [&](const Vec& a, const Vec& bv) {
        return mat_quad(o.ricci, a, bv);
      };
      const double hh = sasaki_ricci_lifted(b, p.xi, Slot2::HH, X, Y);
      const double vv = sasaki_ricci_lifted(b, p.xi, Slot2::VV, X, Y);
      const double hv = sasaki_ricci_lifted(b, p.xi, Slot2::HV, X, Y);
      const double ohh = ric_oracle(lift_vector(f, X, true), lift_vector(f, Y, true));
      const double ovv = ric_oracle(lift_vector(f, X, false), lift_vector(f, Y, false));
      const double ohv = ric_oracle(lift_vector(f, X, true), lift_vector(f, Y, false));
      CHECK(std::abs(hh - ohh) <= 1e-8 * std::max({1.0, scale, std::abs(hh)}));
      CHECK(std::abs(vv - ovv) <= 1e-8 * std::max({1.0, scale, std::abs(vv)}));
      CHECK(std::abs(hv - ohv) <= 1e-8 * std::max({1.0, scale, std::abs(hv)}));
    }
  }

  // exp-diagonal Hessian pair: β = 0, so the lifted Ricci vanishes slotwise.
  const Model hess = exp_diag_hessian();
  const TangentPoint p = random_tangent_point(rng, 2);
  const BasePointData b = make_base_point_data(*hess.g, *hess.D, p.x);
  const Vec X = random_vec(rng, 2), Y = random_vec(rng, 2);
  CHECK(std::abs(sasaki_ricci_lifted(b, p.xi, Slot2::HH, X, Y)) <= 1e-10);
  CHECK(std::abs(sasaki_ricci_lifted(b, p.xi, Slot2::VV, X, Y)) <= 1e-10);
  CHECK(std::abs(sasaki_ricci_lifted(b, p.xi, Slot2::HV, X, Y)) <= 1e-10);
}

TEST_CASE("sasaki_ricci_oracle: Euclidean model is Ricci flat") {
  const Model e = euclidean_plane();
  Rng rng(61);
  const SasakiOracle o = sasaki_oracle(*e.g, *e.D, random_tangent_point(rng, 2));
  CHECK(max_abs(o.ricci) <= 1e-13);
}

TEST_CASE("sasaki_ricci_oracle: ricci matrix is symmetric") {
  Rng rng(67);
  for (int t = 0; t < 6; ++t) {
    const Model m = random_model(rng, 2, t % 2 == 0);
    const SasakiOracle o = sasaki_oracle(*m.g, *m.D, random_tangent_point(rng, 2));
    for (int a = 0; a < o.d; ++a)
      for (int c = 0; c < o.d; ++c) CHECK(close(o.ricci(a, c), o.ricci(c, a), 1e-10));
  }
}

TEST_CASE("curvature_norm_contractions reconstruct |R|² on the sphere") {
  const Model s = unit_sphere_levi_civita();
  const Vec x = {1.2, 0.4};
  const BasePointData b = make_base_point_data(*s.g, *s.D, x);
  const CurvatureNormContractions cn = curvature_norm_contractions(b);
  CHECK(close(cn.r_norm_sq, 4.0, 1e-10));  // |R|² of the unit two-sphere
  CHECK(close(-2.0 * cn.hh, cn.r_norm_sq, 1e-10));
  CHECK(close(4.0 * cn.vv, cn.r_norm_sq, 1e-10));
}

TEST_CASE("holomorphic_sectional_curvature: flat model gives zero and scales out") {
  const Model e = euclidean_plane();
  Rng rng(71);
  const TangentPoint p = random_tangent_point(rng, 2);
  CHECK(std::abs(holomorphic_sectional_curvature(*e.g, *e.D, p, {1.0, 0.5}, LiftSlot::H)) <=
        1e-13);

  const Model s = unit_sphere_levi_civita();
  const TangentPoint ps{{1.3, 0.5}, {0.3, 0.1}};
  const Vec X = {0.7, -0.2};
  const Vec X2 = {1.4, -0.4};
  const double k1 = holomorphic_sectional_curvature(*s.g, *s.D, ps, X, LiftSlot::H);
  const double k2 = holomorphic_sectional_curvature(*s.g, *s.D, ps, X2, LiftSlot::H);
  CHECK(close(k1, k2, 1e-12));
}

TEST_CASE("classify: Euclidean model is Kähler with zero Einstein constant") {
  const Model e = euclidean_plane();
  SampleSpec spec;
  spec.seed = 1;
  spec.count = 10;
  spec.box = {{-1.0, 1.0}, {-1.0, 1.0}};
  const StructureReport rep = classify(*e.g, *e.D, spec);
  CHECK(rep.torsion_D_zero);
  CHECK(rep.torsion_Dstar_zero);
  CHECK(rep.flat_D);
  CHECK(rep.flat_Dstar);
  CHECK(rep.almost_kahler);
  CHECK(rep.kahler);
  CHECK(rep.hessian);
  CHECK(rep.einstein_constant_estimate.has_value());
  CHECK(std::abs(*rep.einstein_constant_estimate) <= 1e-12);
  CHECK(rep.residuals.at("d_omega") <= 1e-12);
  CHECK(rep.inconsistencies.empty());
}

TEST_CASE("classify: torsionful dual connection breaks almost-Kähler") {
  // Γ^1_{22} is symmetric in its lower pair, so D itself is torsion-free;
  // the dual picks up torsion (T*^2_{21} = -1) and dΩ opens up.
  const Box box(2, std::array<double, 2>{-1.0, 1.0});
  std::vector<std::string> gamma(8, "0");
  gamma[(0 * 2 + 1) * 2 + 1] = "1";  // Γ^1_{22}
  const Model m = build_custom({"1", "0", "0", "1"}, gamma, 2, box);
  SampleSpec spec;
  spec.seed = 2;
  spec.count = 10;
  spec.box = {{-1.0, 1.0}, {-1.0, 1.0}};
  const StructureReport rep = classify(*m.g, *m.D, spec);
  CHECK(rep.torsion_D_zero);
  CHECK_FALSE(rep.torsion_Dstar_zero);
  CHECK_FALSE(rep.almost_kahler);
  CHECK(rep.residuals.at("d_omega") >= 1e-3);
  CHECK(rep.inconsistencies.empty());
}

TEST_CASE("classify: almost Kähler but not Kähler configuration") {
  const Box box(2, std::array<double, 2>{-1.0, 1.0});
  std::vector<std::string> gamma(8, "0");
  gamma[(0 * 2 + 0) * 2 + 1] = "1";  // Γ^1_{12}
  const Model m = build_custom({"1", "0", "0", "1"}, gamma, 2, box);
  SampleSpec spec;
  spec.seed = 3;
  spec.count = 10;
  spec.box = {{-1.0, 1.0}, {-1.0, 1.0}};
  const StructureReport rep = classify(*m.g, *m.D, spec);
  CHECK(rep.flat_Dstar);
  CHECK(rep.torsion_Dstar_zero);
  CHECK(rep.almost_kahler);
  CHECK_FALSE(rep.kahler);  // T^D never vanishes
  CHECK(rep.residuals.at("nijenhuis") >= 1e-3);
  CHECK(rep.inconsistencies.empty());
}
