#include "tmk/geometry.hpp"

#include <cmath>

namespace tmk {

namespace {

Mat values_of(const JetMat& jm, int rows, int cols) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = jm[static_cast<std::size_t>(i * cols + j)].value();
  return m;
}

}  // namespace

// R^l_{kij} as jets from connection jets (one order lower).
JetMat curvature_jets(const JetMat& cj, int n) {
  auto C = [&](int k, int i, int j) -> const Jet& {
    return cj[static_cast<std::size_t>((k * n + i) * n + j)];
  };
  JetMat R(static_cast<std::size_t>(n) * n * n * n);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Jet r = C(l, j, k).partial(i) - C(l, i, k).partial(j);
          for (int m = 0; m < n; ++m) {
            r += C(l, i, m) * C(m, j, k) - C(l, j, m) * C(m, i, k);
          }
          R[((static_cast<std::size_t>(l) * n + k) * n + i) * n + j] = r;
        }
      }
    }
  }
  return R;
}

namespace {

T4 lower_r(const Mat& g, const T4& r13) {
  const int n = g.rows;
  T4 out(n);
  for (int w = 0; w < n; ++w)
    for (int z = 0; z < n; ++z)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) s += g(l, w) * r13(l, z, i, j);
          out(w, z, i, j) = s;
        }
  return out;
}

}  // namespace

// Γ*^k_{ij} jets from metric jets (order m+1) and connection jets (order m).
JetMat dual_gamma_jets(const JetMat& gj, const JetMat& cj, int n) {
  const JetMat ginv = jet_mat_inverse(gj, n);
  auto G = [&](int i, int j) -> const Jet& { return gj[static_cast<std::size_t>(i * n + j)]; };
  auto C = [&](int k, int i, int j) -> const Jet& {
    return cj[static_cast<std::size_t>((k * n + i) * n + j)];
  };
  JetMat out(static_cast<std::size_t>(n) * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Jet acc;
        bool first = true;
        for (int l = 0; l < n; ++l) {
          Jet s = G(j, l).partial(i);
          for (int m = 0; m < n; ++m) s -= C(m, i, l) * G(j, m);
          Jet term = ginv[static_cast<std::size_t>(k * n + l)] * s;
          if (first) {
            acc = term;
            first = false;
          } else {
            acc += term;
          }
        }
        out[static_cast<std::size_t>((k * n + i) * n + j)] = acc;
      }
    }
  }
  return out;
}

// Levi-Civita jets from metric jets (one order lower than gj).
JetMat christoffel_jets(const JetMat& gj, int n) {
  const JetMat ginv = jet_mat_inverse(gj, n);
  auto G = [&](int i, int j) -> const Jet& { return gj[static_cast<std::size_t>(i * n + j)]; };
  JetMat out(static_cast<std::size_t>(n) * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Jet acc;
        bool first = true;
        for (int l = 0; l < n; ++l) {
          Jet s = G(l, j).partial(i) + G(l, i).partial(j) - G(i, j).partial(l);
          Jet term = 0.5 * (ginv[static_cast<std::size_t>(k * n + l)] * s);
          if (first) {
            acc = term;
            first = false;
          } else {
            acc += term;
          }
        }
        out[static_cast<std::size_t>((k * n + i) * n + j)] = acc;
      }
    }
  }
  return out;
}

namespace {

T4 r4_values(const JetMat& rj, int n) {
  T4 out(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          out(l, k, i, j) =
              rj[((static_cast<std::size_t>(l) * n + k) * n + i) * n + j].value();
  return out;
}

}  // namespace

// (Dg) jets: (D_k g)(i,j) = ∂_k g_ij - Γ^m_{ki} g_mj - Γ^m_{kj} g_im.
JetMat metric_cov_deriv_jets(const JetMat& gj, const JetMat& cj, int n) {
  auto G = [&](int i, int j) -> const Jet& { return gj[static_cast<std::size_t>(i * n + j)]; };
  auto C = [&](int k, int i, int j) -> const Jet& {
    return cj[static_cast<std::size_t>((k * n + i) * n + j)];
  };
  JetMat out(static_cast<std::size_t>(n) * n * n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Jet s = G(i, j).partial(k);
        for (int m = 0; m < n; ++m) {
          s -= C(m, k, i) * G(m, j);
          s -= C(m, k, j) * G(i, m);
        }
        out[static_cast<std::size_t>((k * n + i) * n + j)] = s;
      }
    }
  }
  return out;
}

double T3::sup_abs() const {
  double m = 0.0;
  for (double v : d) m = std::max(m, std::abs(v));
  return m;
}

double T4::sup_abs() const {
  double m = 0.0;
  for (double v : d) m = std::max(m, std::abs(v));
  return m;
}

BasePointData make_base_point_data(const MetricField& g, const ConnectionField& D,
                                   std::span<const double> x) {
  const int n = g.dim();
  if (D.dim() != n) throw Error("metric/connection dimension mismatch");
  BasePointData b;
  b.n = n;
  b.x.assign(x.begin(), x.end());

  const JetMat gj = g.components(x, 3);
  const JetMat cj = D.components(x, 2);

  b.g = values_of(gj, n, n);
  b.g_inv = mat_inverse(b.g);

  b.dg = T3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        b.dg(k, i, j) = gj[static_cast<std::size_t>(i * n + j)].d1(k);

  b.gamma_D = T3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        b.gamma_D(k, i, j) = cj[static_cast<std::size_t>((k * n + i) * n + j)].value();

  const JetMat lcj = christoffel_jets(gj, n);  // order 2
  b.gamma_lc = T3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        b.gamma_lc(k, i, j) = lcj[static_cast<std::size_t>((k * n + i) * n + j)].value();

  const JetMat dualj = dual_gamma_jets(gj, cj, n);  // order 2
  b.gamma_dual = T3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        b.gamma_dual(k, i, j) = dualj[static_cast<std::size_t>((k * n + i) * n + j)].value();

  const JetMat rdj = curvature_jets(cj, n);  // order 1
  b.R_D = r4_values(rdj, n);
  b.R_dual = r4_values(curvature_jets(dualj, n), n);
  b.R_lc = r4_values(curvature_jets(lcj, n), n);
  b.R04_D = lower_r(b.g, b.R_D);
  b.R04_dual = lower_r(b.g, b.R_dual);
  b.R04_lc = lower_r(b.g, b.R_lc);

  b.ric_lc = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int c = 0; c < n; ++c) s += b.R_lc(c, i, c, j);
      b.ric_lc(i, j) = s;
    }

  b.T_D = T3(n);
  b.T_dual = T3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        b.T_D(k, i, j) = b.gamma_D(k, i, j) - b.gamma_D(k, j, i);
        b.T_dual(k, i, j) = b.gamma_dual(k, i, j) - b.gamma_dual(k, j, i);
      }
  b.tr_T_dual.assign(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += b.T_dual(i, i, j);
    b.tr_T_dual[static_cast<std::size_t>(j)] = s;
  }

  const JetMat dgj = metric_cov_deriv_jets(gj, cj, n);  // order 2
  b.Dg = T3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        b.Dg(k, i, j) = dgj[static_cast<std::size_t>((k * n + i) * n + j)].value();

  // (D²g)(m,k;i,j) = ∂_m (Dg)(k,i,j) - Γ-corrections on the three slots.
  b.D2g = T4(n);
  auto DG = [&](int k, int i, int j) -> const Jet& {
    return dgj[static_cast<std::size_t>((k * n + i) * n + j)];
  };
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = DG(k, i, j).d1(m);
          for (int p = 0; p < n; ++p) {
            s -= b.gamma_D(p, m, k) * b.Dg(p, i, j);
            s -= b.gamma_D(p, m, i) * b.Dg(k, p, j);
            s -= b.gamma_D(p, m, j) * b.Dg(k, i, p);
          }
          b.D2g(m, k, i, j) = s;
        }

  b.gamma_diff = T3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        b.gamma_diff(k, i, j) = b.gamma_D(k, i, j) - b.gamma_lc(k, i, j);
  b.tr_gamma.assign(static_cast<std::size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += b.gamma_diff(i, i, j);
    b.tr_gamma[static_cast<std::size_t>(j)] = s;
  }

  // (DR)(m;l,k,i,j): covariant derivative of the (1,3) curvature.
  b.DR_D = T5(n);
  for (int m = 0; m < n; ++m)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double s = rdj[((static_cast<std::size_t>(l) * n + k) * n + i) * n + j].d1(m);
            for (int p = 0; p < n; ++p) {
              s += b.gamma_D(l, m, p) * b.R_D(p, k, i, j);
              s -= b.gamma_D(p, m, k) * b.R_D(l, p, i, j);
              s -= b.gamma_D(p, m, i) * b.R_D(l, k, p, j);
              s -= b.gamma_D(p, m, j) * b.R_D(l, k, i, p);
            }
            b.DR_D(m, l, k, i, j) = s;
          }

  return b;
}

TensorValue levi_civita(const MetricField& g, std::span<const double> x) {
  const int n = g.dim();
  const JetMat gj = g.components(x, 1);
  const JetMat lcj = christoffel_jets(gj, n);
  TensorValue t({Slot::Up, Slot::Down, Slot::Down}, n, Vec(x.begin(), x.end()));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        t.at({k, i, j}) = lcj[static_cast<std::size_t>((k * n + i) * n + j)].value();
  return t;
}

TensorValue torsion(const ConnectionField& D, std::span<const double> x) {
  const int n = D.dim();
  const JetMat cj = D.components(x, 0);
  TensorValue t({Slot::Up, Slot::Down, Slot::Down}, n, Vec(x.begin(), x.end()));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        t.at({k, i, j}) = cj[static_cast<std::size_t>((k * n + i) * n + j)].value() -
                          cj[static_cast<std::size_t>((k * n + j) * n + i)].value();
  return t;
}

TensorValue curvature(const ConnectionField& D, std::span<const double> x) {
  const int n = D.dim();
  const JetMat cj = D.components(x, 1);
  const JetMat rj = curvature_jets(cj, n);
  TensorValue t({Slot::Up, Slot::Down, Slot::Down, Slot::Down}, n,
                Vec(x.begin(), x.end()));
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          t.at({l, k, i, j}) =
              rj[((static_cast<std::size_t>(l) * n + k) * n + i) * n + j].value();
  return t;
}

TensorValue lower_curvature(const MetricField& g, const TensorValue& R,
                            std::span<const double> x) {
  const int n = g.dim();
  const JetMat gj = g.components(x, 0);
  TensorValue t({Slot::Down, Slot::Down, Slot::Down, Slot::Down}, n,
                Vec(x.begin(), x.end()));
  for (int w = 0; w < n; ++w)
    for (int z = 0; z < n; ++z)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l)
            s += gj[static_cast<std::size_t>(l * n + w)].value() * R.at({l, z, i, j});
          t.at({w, z, i, j}) = s;
        }
  return t;
}

TensorJets cov_deriv(const TensorJets& T, const JetMat& gamma_jets) {
  const int n = T.n;
  const int rank = static_cast<int>(T.variance.size());
  auto C = [&](int k, int i, int j) -> const Jet& {
    return gamma_jets[static_cast<std::size_t>((k * n + i) * n + j)];
  };
  TensorJets out;
  out.n = n;
  out.variance.push_back(Slot::Down);
  for (Slot s : T.variance) out.variance.push_back(s);
  const std::size_t count = T.comp.size();
  out.comp.resize(static_cast<std::size_t>(n) * count);
  std::vector<int> idx(static_cast<std::size_t>(rank));
  for (std::size_t a = 0; a < count; ++a) {
    std::size_t rem = a;
    for (int s = rank - 1; s >= 0; --s) {
      idx[static_cast<std::size_t>(s)] = static_cast<int>(rem % static_cast<std::size_t>(n));
      rem /= static_cast<std::size_t>(n);
    }
    for (int m = 0; m < n; ++m) {
      Jet r = T.comp[a].partial(m);
      for (int s = 0; s < rank; ++s) {
        const int orig = idx[static_cast<std::size_t>(s)];
        // vary slot s over p
        long long stride = 1;
        for (int t = rank - 1; t > s; --t) stride *= n;
        for (int p = 0; p < n; ++p) {
          const std::size_t a_p = static_cast<std::size_t>(
              static_cast<long long>(a) + (static_cast<long long>(p) - orig) * stride);
          if (T.variance[static_cast<std::size_t>(s)] == Slot::Up) {
            r += C(orig, m, p) * T.comp[a_p];
          } else {
            r -= C(p, m, orig) * T.comp[a_p];
          }
        }
      }
      out.comp[static_cast<std::size_t>(m) * count + a] = r;
    }
  }
  return out;
}

TensorValue cov_deriv_metric(const MetricField& g, const ConnectionField& D,
                             std::span<const double> x) {
  const int n = g.dim();
  const JetMat gj = g.components(x, 1);
  const JetMat cj = D.components(x, 0);
  const JetMat dgj = metric_cov_deriv_jets(gj, cj, n);
  TensorValue t({Slot::Down, Slot::Down, Slot::Down}, n, Vec(x.begin(), x.end()));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        t.at({k, i, j}) = dgj[static_cast<std::size_t>((k * n + i) * n + j)].value();
  return t;
}

TensorValue cov_deriv2_metric(const MetricField& g, const ConnectionField& D,
                              std::span<const double> x) {
  const int n = g.dim();
  const JetMat gj = g.components(x, 2);
  const JetMat cj = D.components(x, 1);
  TensorJets dg;
  dg.n = n;
  dg.variance = {Slot::Down, Slot::Down, Slot::Down};
  dg.comp = metric_cov_deriv_jets(gj, cj, n);
  const TensorJets d2g = cov_deriv(dg, cj);
  TensorValue t({Slot::Down, Slot::Down, Slot::Down, Slot::Down}, n,
                Vec(x.begin(), x.end()));
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          t.at({m, k, i, j}) =
              d2g.comp[((static_cast<std::size_t>(m) * n + k) * n + i) * n + j].value();
  return t;
}

TensorValue cov_deriv_curvature(const ConnectionField& D, std::span<const double> x) {
  const int n = D.dim();
  const JetMat cj = D.components(x, 2);
  TensorJets R;
  R.n = n;
  R.variance = {Slot::Up, Slot::Down, Slot::Down, Slot::Down};
  R.comp = curvature_jets(cj, n);
  const TensorJets dR = cov_deriv(R, cj);
  TensorValue t({Slot::Down, Slot::Up, Slot::Down, Slot::Down, Slot::Down}, n,
                Vec(x.begin(), x.end()));
  for (int m = 0; m < n; ++m)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            t.at({m, l, k, i, j}) =
                dR.comp[(((static_cast<std::size_t>(m) * n + l) * n + k) * n + i) * n + j]
                    .value();
  return t;
}

GammaDiff gamma_diff(const ConnectionField& D, const MetricField& g,
                     std::span<const double> x) {
  const int n = g.dim();
  const JetMat gj = g.components(x, 1);
  const JetMat lcj = christoffel_jets(gj, n);
  const JetMat cj = D.components(x, 0);
  GammaDiff out;
  out.gamma = TensorValue({Slot::Up, Slot::Down, Slot::Down}, n, Vec(x.begin(), x.end()));
  out.trace = TensorValue({Slot::Down}, n, Vec(x.begin(), x.end()));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.gamma.at({k, i, j}) =
            cj[static_cast<std::size_t>((k * n + i) * n + j)].value() -
            lcj[static_cast<std::size_t>((k * n + i) * n + j)].value();
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += out.gamma.at({i, i, j});
    out.trace.at({j}) = s;
  }
  return out;
}

KoszulForms koszul_forms(const MetricField& g, const ConnectionField& D,
                         std::span<const double> x) {
  const int n = g.dim();
  const JetMat gj = g.components(x, 2);
  const JetMat cj = D.components(x, 1);
  Jet det = jet_mat_det(gj, n);
  if (std::abs(det.value()) < 1e-300) throw SingularMetric("koszul_forms: det g = 0");
  if (det.value() < 0.0) det = -det;
  const Jet logvol = 0.5 * log(det);  // log √|det g|
  auto C = [&](int k, int i, int j) -> const Jet& {
    return cj[static_cast<std::size_t>((k * n + i) * n + j)];
  };
  // α as jets (order 1) so β can differentiate it.
  JetMat alpha(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Jet a = logvol.partial(i);
    for (int k = 0; k < n; ++k) a -= C(k, k, i);
    alpha[static_cast<std::size_t>(i)] = a;
  }
  KoszulForms out;
  out.alpha = TensorValue({Slot::Down}, n, Vec(x.begin(), x.end()));
  out.beta = TensorValue({Slot::Down, Slot::Down}, n, Vec(x.begin(), x.end()));
  for (int i = 0; i < n; ++i) out.alpha.at({i}) = alpha[static_cast<std::size_t>(i)].value();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double b = alpha[static_cast<std::size_t>(i)].d1(j);
      for (int k = 0; k < n; ++k)
        b -= C(k, j, i).value() * alpha[static_cast<std::size_t>(k)].value();
      out.beta.at({i, j}) = b;
    }
  }
  return out;
}

double tensor_norm_sq(const MetricField& g, const TensorValue& T,
                      std::span<const double> x) {
  const int n = g.dim();
  const JetMat gj = g.components(x, 0);
  Mat gm = values_of(gj, n, n);
  Mat gi = mat_inverse(gm);
  return tensor_norm_sq(gm, gi, T);
}

double dual_torsion_residual(const BasePointData& b) {
  const int n = b.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double lhs = 0.0, tD = 0.0;
        for (int m = 0; m < n; ++m) {
          lhs += b.g(m, k) * b.T_dual(m, i, j);
          tD += b.g(m, k) * b.T_D(m, i, j);
        }
        const double rhs = b.Dg(i, j, k) - b.Dg(j, i, k) + tD;
        worst = std::max(worst, std::abs(lhs - rhs));
      }
  return worst;
}

double dual_curvature_residual(const BasePointData& b) {
  const int n = b.n;
  double worst = 0.0;
  for (int z = 0; z < n; ++z)
    for (int w = 0; w < n; ++w)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          worst = std::max(worst,
                           std::abs(b.R04_dual(z, w, i, j) + b.R04_D(w, z, i, j)));
  return worst;
}

double dual_involution_residual(const MetricField& g, const ConnectionField& D,
                                std::span<const double> x) {
  const int n = g.dim();
  const JetMat gj = g.components(x, 2);
  const JetMat cj = D.components(x, 1);
  const JetMat dualj = dual_gamma_jets(gj, cj, n);
  const JetMat dual2j = dual_gamma_jets(gj, dualj, n);
  double worst = 0.0;
  for (std::size_t a = 0; a < cj.size(); ++a)
    worst = std::max(worst, std::abs(dual2j[a].value() - cj[a].value()));
  return worst;
}

double first_bianchi_residual(const BasePointData& b) {
  const int n = b.n;
  double worst = 0.0;
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double cyc =
              b.R_D(l, k, i, j) + b.R_D(l, i, j, k) + b.R_D(l, j, k, i);
          worst = std::max(worst, std::abs(cyc));
        }
  return worst;
}

double levi_civita_defect(const MetricField& g, std::span<const double> x) {
  const int n = g.dim();
  const JetMat gj = g.components(x, 2);
  const JetMat lcj = christoffel_jets(gj, n);
  const JetMat dgj = metric_cov_deriv_jets(gj, lcj, n);
  double worst = 0.0;
  for (const Jet& j : dgj) worst = std::max(worst, std::abs(j.value()));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        worst = std::max(
            worst, std::abs(lcj[static_cast<std::size_t>((k * n + i) * n + j)].value() -
                            lcj[static_cast<std::size_t>((k * n + j) * n + i)].value()));
  return worst;
}

}  // namespace tmk
