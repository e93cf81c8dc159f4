#include "tmk/classify.hpp"

#include <cmath>
#include <sstream>

namespace tmk {

namespace {

struct SampleResult {
  double torsion_D = 0.0;
  double torsion_Dstar = 0.0;
  double curvature_D = 0.0;
  double curvature_Dstar = 0.0;
  double d_omega = 0.0;
  double nijenhuis = 0.0;
  double ricci_j_invariance = 0.0;
  double ricci_symmetry = 0.0;
  double econdi2_hh_error = 0.0;
  double econdi2_vv_error = 0.0;
  double r_norm_sq = 0.0;
  Mat ricci;     // 2n x 2n oracle Ricci
  Mat gtilde;    // 2n x 2n Sasaki metric
  Mat beta;      // n x n second Koszul form (when computable)
  bool has_beta = false;
  Mat g_base;    // n x n
  Signature signature;
};

std::string point_to_string(const Vec& x, const Vec& xi) {
  std::ostringstream os;
  os << "(x =";
  for (double v : x) os << ' ' << v;
  os << "; xi =";
  for (double v : xi) os << ' ' << v;
  os << ')';
  return os.str();
}

double frob_inner(const Mat& a, const Mat& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.a.size(); ++i) s += a.a[i] * b.a[i];
  return s;
}

Mat mat_diff_scaled(const Mat& a, double c, const Mat& b) {
  Mat r = a;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= c * b.a[i];
  return r;
}

}  // namespace

StructureReport classify(const MetricField& g, const ConnectionField& D,
                         const SampleSpec& spec) {
  const int n = g.dim();
  const std::vector<SamplePoint> samples = draw_samples(spec, n);
  std::vector<SampleResult> results(samples.size());

  parallel_for(static_cast<int>(samples.size()), [&](int s) {
    const SamplePoint& sp = samples[static_cast<std::size_t>(s)];
    try {
      SampleResult r;
      const BasePointData b = make_base_point_data(g, D, sp.x);
      r.torsion_D = b.T_D.sup_abs();
      r.torsion_Dstar = b.T_dual.sup_abs();
      r.curvature_D = b.R_D.sup_abs();
      r.curvature_Dstar = b.R_dual.sup_abs();
      r.g_base = b.g;
      r.signature = metric_signature(b.g);

      // dΩ residual over all basis probes of the two nontrivial slots.
      for (int i = 0; i < n; ++i) {
        Vec ei(static_cast<std::size_t>(n), 0.0);
        ei[static_cast<std::size_t>(i)] = 1.0;
        for (int j = 0; j < n; ++j) {
          Vec ej(static_cast<std::size_t>(n), 0.0);
          ej[static_cast<std::size_t>(j)] = 1.0;
          for (int k = 0; k < n; ++k) {
            Vec ek(static_cast<std::size_t>(n), 0.0);
            ek[static_cast<std::size_t>(k)] = 1.0;
            r.d_omega = std::max(
                r.d_omega,
                std::abs(d_omega_lifted(b, sp.xi, DOmegaSlots::HHH, ei, ej, ek)));
            r.d_omega = std::max(
                r.d_omega,
                std::abs(d_omega_lifted(b, sp.xi, DOmegaSlots::HHV, ei, ej, ek)));
          }
        }
      }

      // Nijenhuis residual.
      for (int i = 0; i < n; ++i) {
        Vec ei(static_cast<std::size_t>(n), 0.0);
        ei[static_cast<std::size_t>(i)] = 1.0;
        for (int j = i + 1; j < n; ++j) {
          Vec ej(static_cast<std::size_t>(n), 0.0);
          ej[static_cast<std::size_t>(j)] = 1.0;
          const NijenhuisParts parts = nijenhuis_at(b, sp.xi, ei, ej);
          r.nijenhuis = std::max({r.nijenhuis, max_abs(parts.horizontal),
                                  max_abs(parts.vertical)});
        }
      }

      const TangentPoint tp{sp.x, sp.xi};
      const SasakiOracle oracle = sasaki_oracle(g, D, tp);
      r.ricci = oracle.ricci;
      r.gtilde = oracle.gtilde;

      const Mat J = almost_complex_chart(D, tp);
      const Mat jt_ric_j = mat_mul(mat_transpose(J), mat_mul(r.ricci, J));
      r.ricci_j_invariance = max_abs(mat_diff_scaled(jt_ric_j, 1.0, r.ricci));
      r.ricci_symmetry = max_abs(mat_diff_scaled(r.ricci, 1.0, mat_transpose(r.ricci)));

      const CurvatureNormContractions cn = curvature_norm_contractions(b);
      r.econdi2_hh_error = std::abs(-2.0 * cn.hh - cn.r_norm_sq);
      r.econdi2_vv_error = std::abs(4.0 * cn.vv - cn.r_norm_sq);
      r.r_norm_sq = cn.r_norm_sq;

      // Second Koszul form; meaningful for flat D, computable whenever
      // det g stays away from zero.
      try {
        const KoszulForms kf = koszul_forms(g, D, sp.x);
        r.beta = Mat(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) r.beta(i, j) = kf.beta.at({i, j});
        r.has_beta = true;
      } catch (const SingularMetric&) {
        r.has_beta = false;
      }

      results[static_cast<std::size_t>(s)] = std::move(r);
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + " at sample " +
                  point_to_string(sp.x, sp.xi));
    }
  });

  StructureReport rep;
  rep.sample_spec = spec;

  double torsion_D = 0.0, torsion_Dstar = 0.0, curv_D = 0.0, curv_Dstar = 0.0;
  double d_omega = 0.0, nij = 0.0, jinv = 0.0, rsym = 0.0;
  for (const SampleResult& r : results) {
    torsion_D = std::max(torsion_D, r.torsion_D);
    torsion_Dstar = std::max(torsion_Dstar, r.torsion_Dstar);
    curv_D = std::max(curv_D, r.curvature_D);
    curv_Dstar = std::max(curv_Dstar, r.curvature_Dstar);
    d_omega = std::max(d_omega, r.d_omega);
    nij = std::max(nij, r.nijenhuis);
    jinv = std::max(jinv, r.ricci_j_invariance);
    rsym = std::max(rsym, r.ricci_symmetry);
    rep.econdi2_hh_error = std::max(rep.econdi2_hh_error, r.econdi2_hh_error);
    rep.econdi2_vv_error = std::max(rep.econdi2_vv_error, r.econdi2_vv_error);
    rep.r_norm_sq_max = std::max(rep.r_norm_sq_max, r.r_norm_sq);
  }

  // Least-squares Einstein constant over all sampled component pairs.
  double num = 0.0, den = 0.0;
  for (const SampleResult& r : results) {
    num += frob_inner(r.ricci, r.gtilde);
    den += frob_inner(r.gtilde, r.gtilde);
  }
  double einstein_res = 0.0;
  if (den > 0.0) {
    const double c = num / den;
    rep.einstein_constant_estimate = c;
    for (const SampleResult& r : results)
      einstein_res = std::max(einstein_res, max_abs(mat_diff_scaled(r.ricci, c, r.gtilde)));
  }

  // Least-squares Hesse-Einstein constant.
  double hnum = 0.0, hden = 0.0;
  bool all_beta = true;
  for (const SampleResult& r : results) {
    if (!r.has_beta) {
      all_beta = false;
      break;
    }
    hnum += frob_inner(r.beta, r.g_base);
    hden += frob_inner(r.g_base, r.g_base);
  }
  double hesse_res = 0.0;
  if (all_beta && hden > 0.0) {
    const double c = hnum / hden;
    rep.hesse_einstein_constant_estimate = c;
    for (const SampleResult& r : results)
      hesse_res = std::max(hesse_res, max_abs(mat_diff_scaled(r.beta, c, r.g_base)));
  }

  rep.residuals["torsion_D"] = torsion_D;
  rep.residuals["torsion_Dstar"] = torsion_Dstar;
  rep.residuals["curvature_D"] = curv_D;
  rep.residuals["curvature_Dstar"] = curv_Dstar;
  rep.residuals["d_omega"] = d_omega;
  rep.residuals["nijenhuis"] = nij;
  rep.residuals["einstein"] = einstein_res;
  if (all_beta) rep.residuals["hesse_einstein"] = hesse_res;
  rep.residuals["ricci_j_invariance"] = jinv;
  rep.residuals["ricci_symmetry"] = rsym;

  rep.torsion_D_zero = torsion_D <= kFlagThreshold;
  rep.torsion_Dstar_zero = torsion_Dstar <= kFlagThreshold;
  rep.flat_D = rep.torsion_D_zero && curv_D <= kFlagThreshold;
  rep.flat_Dstar = rep.torsion_Dstar_zero && curv_Dstar <= kFlagThreshold;
  rep.almost_kahler = rep.torsion_Dstar_zero;
  rep.kahler = rep.almost_kahler && rep.flat_D;
  rep.hessian = rep.flat_D && rep.flat_Dstar;
  rep.einstein_necessary_RD_zero = curv_D <= kFlagThreshold;
  rep.hesse_einstein = rep.hessian && all_beta && hesse_res <= kFlagThreshold;

  if (!results.empty()) {
    rep.signature_positive = results.front().signature.positive;
    rep.signature_negative = results.front().signature.negative;
    for (const SampleResult& r : results) {
      if (r.signature.negative > 0) rep.pseudo_metric = true;
    }
  }

  // Theorem-level cross checks between flags and their independent
  // residuals: a definite disagreement is an internal failure.
  auto definite_conflict = [](double a, double b) {
    const bool za = a <= kFlagThreshold;
    const bool zb = b <= kFlagThreshold;
    return za != zb && std::max(a, b) >= kNonzeroThreshold;
  };
  if (definite_conflict(torsion_Dstar, d_omega)) {
    rep.inconsistencies.push_back(
        "almost-Kahler flag (torsion of D*) disagrees with the dOmega residual");
  }
  const double flatness = std::max(torsion_D, curv_D);
  if (definite_conflict(flatness, nij)) {
    rep.inconsistencies.push_back(
        "flatness of D disagrees with the Nijenhuis residual");
  }
  return rep;
}

}  // namespace tmk
