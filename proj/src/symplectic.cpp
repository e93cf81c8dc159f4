#include "tmk/symplectic.hpp"

#include <cmath>

namespace tmk {

namespace {

Jet lift_base_jet(const Jet& base, int n, int order) {
  Jet out(2 * n, order);
  out.value() = base.value();
  if (order >= 1)
    for (int i = 0; i < n; ++i) out.ref1(i) = base.d1(i);
  if (order >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.ref2(i, j) = base.d2(i, j);
  return out;
}

// Pull-back form components as order-1 jets on the induced chart.
JetMat pullback_jets(const MetricField& g, const TangentPoint& p) {
  const int n = g.dim();
  const int d = 2 * n;
  const JetMat gj = g.components(p.x, 2);
  JetMat G(static_cast<std::size_t>(n) * n);
  for (std::size_t a = 0; a < G.size(); ++a) G[a] = lift_base_jet(gj[a], n, 1);
  JetMat Yc(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m)
    Yc[static_cast<std::size_t>(m)] =
        Jet::coordinate(d, 1, n + m, p.xi[static_cast<std::size_t>(m)]);

  JetMat P(static_cast<std::size_t>(d) * d, Jet::constant(d, 1, 0.0));
  auto at = [&](int a, int b) -> Jet& { return P[static_cast<std::size_t>(a * d + b)]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Jet xx = Jet::constant(d, 1, 0.0);
      for (int k = 0; k < n; ++k) {
        // ∂_j g_ik - ∂_i g_jk, lifted, times y^k
        Jet diff = lift_base_jet(gj[static_cast<std::size_t>(i * n + k)].partial(j) -
                                     gj[static_cast<std::size_t>(j * n + k)].partial(i),
                                 n, 1);
        xx += diff * Yc[static_cast<std::size_t>(k)];
      }
      at(i, j) = xx;
      at(i, n + j) = G[static_cast<std::size_t>(i * n + j)];
      at(n + j, i) = -G[static_cast<std::size_t>(i * n + j)];
    }
  }
  return P;
}

}  // namespace

Mat pullback_form_at(const MetricField& g, const TangentPoint& p) {
  const int n = g.dim();
  const int d = 2 * n;
  const JetMat P = pullback_jets(g, p);
  Mat out(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out(a, b) = P[static_cast<std::size_t>(a * d + b)].value();
  return out;
}

double pullback_closedness_residual(const MetricField& g, const TangentPoint& p) {
  const int n = g.dim();
  const int d = 2 * n;
  const JetMat P = pullback_jets(g, p);
  auto at = [&](int a, int b) -> const Jet& {
    return P[static_cast<std::size_t>(a * d + b)];
  };
  double worst = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int c = b + 1; c < d; ++c) {
        const double dP = at(b, c).d1(a) + at(c, a).d1(b) + at(a, b).d1(c);
        worst = std::max(worst, std::abs(dP));
      }
  return worst;
}

SymplecticMatch symplectic_match(const MetricField& g, const ConnectionField& D,
                                 const SampleSpec& spec, double tol) {
  const int n = g.dim();
  const std::vector<SamplePoint> samples = draw_samples(spec, n);
  SymplecticMatch out;
  for (const SamplePoint& sp : samples) {
    const TangentPoint p{sp.x, sp.xi};
    const Mat pb = pullback_form_at(g, p);
    const Mat om = kahler_form_chart(g, D, p);
    double dev = 0.0;
    for (std::size_t i = 0; i < pb.a.size(); ++i)
      dev = std::max(dev, std::abs(pb.a[i] - om.a[i]));
    out.max_deviation = std::max(out.max_deviation, dev);

    const BasePointData b = make_base_point_data(g, D, sp.x);
    out.torsion_Dstar = std::max(out.torsion_Dstar, b.T_dual.sup_abs());
  }
  out.matches = out.max_deviation <= tol;
  return out;
}

}  // namespace tmk
