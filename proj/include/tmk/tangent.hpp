#pragma once

#include "tmk/geometry.hpp"

namespace tmk {

// A point of TM in induced coordinates (x^1..x^n, y^1..y^n).
struct TangentPoint {
  Vec x;
  Vec xi;
};

// Chart coefficients of the lifted frame at a tangent point:
//   (∂_i)^H = ∂/∂x^i - A^k_i ∂/∂y^k  with A^k_i = Γ^k_{im} ξ^m,
//   (∂_i)^V = ∂/∂y^i.
// Rows are frame vectors, columns the 2n induced-chart components.
struct LiftedFrame {
  Mat horizontal;  // n x 2n
  Mat vertical;    // n x 2n
};

LiftedFrame lift_frame(const ConnectionField& D, const TangentPoint& p);

// A^k_i = Γ^k_{im} ξ^m (row k, column i).
Mat connection_shift(const ConnectionField& D, const TangentPoint& p);

// Sasaki metric chart blocks:
//   g̃_xx = g_ij + g_kl A^k_i A^l_j,  g̃_xy = g_kj A^k_i,  g̃_yy = g_ij.
Mat sasaki_metric_chart(const MetricField& g, const ConnectionField& D,
                        const TangentPoint& p);

// Kähler form Ω = g̃(J·,·) in chart components:
//   Ω_xx(i,j) = Σ_{k,l} (Γ^l_{jk} g_{li} - Γ^l_{ik} g_{lj}) y^k,
//   Ω_xy = g_ij,  Ω_yy = 0.
Mat kahler_form_chart(const MetricField& g, const ConnectionField& D,
                      const TangentPoint& p);

// J in chart components (block form [[-A, -I],[I + A², A]]); J² = -Id.
Mat almost_complex_chart(const ConnectionField& D, const TangentPoint& p);

enum class DOmegaSlots { HHH, HHV, HVV, VVV };

// dΩ on lifted triples: the HHH slot is the cyclic sum of R*_g(ξ,X,Y,Z);
// the HHV slot (vertical in Z) is g(T*(X,Y),Z); the rest vanish.
double d_omega_lifted(const BasePointData& b, const Vec& xi, DOmegaSlots slots,
                      const Vec& X, const Vec& Y, const Vec& Z);

// dΩ from the coordinate exterior derivative of the chart components of Ω,
// for arbitrary constant chart vectors of TM.
double d_omega_oracle(const MetricField& g, const ConnectionField& D,
                      const TangentPoint& p, const Vec& u, const Vec& v, const Vec& w);

// N(X^H, Y^H) split into its horizontal part T(X,Y) and vertical part R(X,Y)ξ,
// both returned as base vectors.
struct NijenhuisParts {
  Vec horizontal;
  Vec vertical;
};
NijenhuisParts nijenhuis_at(const BasePointData& b, const Vec& xi, const Vec& X,
                            const Vec& Y);

enum class Slot4 { HHHH, HVVV, VVVV, HVHH, VVHH, HVHV };

// Lifted curvature components R̃(Z^•, W^•, X^•, Y^•) with the slot pattern
// applied to (Z,W,X,Y) positionally; frame sums realized as g-contractions.
double sasaki_curvature_lifted(const BasePointData& b, const Vec& xi, Slot4 slot,
                               const Vec& Z, const Vec& W, const Vec& X, const Vec& Y);

enum class Slot2 { HH, VV, HV };

double sasaki_ricci_lifted(const BasePointData& b, const Vec& xi, Slot2 slot,
                           const Vec& X, const Vec& Y);

// Brute-force data for g̃ as a plain 2n-dimensional metric, from jets of its
// chart components: Levi-Civita, Riemann (lowered, same slot convention as
// the base), Ricci.
struct SasakiOracle {
  int d = 0;  // 2n
  Mat gtilde;
  T4 riemann04;  // (w,z,a,b)
  Mat ricci;
};

SasakiOracle sasaki_oracle(const MetricField& g, const ConnectionField& D,
                           const TangentPoint& p);

// Sasaki metric chart components as order-2 jets in the 2n induced
// coordinates (assembled by composition from base jets).
JetMat sasaki_metric_jets(const MetricField& g, const ConnectionField& D,
                          const TangentPoint& p, int order);

enum class LiftSlot { H, V };

// K = R̃(u, Ju, u, Ju) / (g̃(u,u) g̃(Ju,Ju) - g̃(u,Ju)²) for u the lift of X.
double holomorphic_sectional_curvature(const MetricField& g, const ConnectionField& D,
                                       const TangentPoint& p, const Vec& X,
                                       LiftSlot slot);

// ξ-dependent contractions behind the J-invariance obstruction: contracting
// the ξ-part of Ric̃(H,H) over frames gives -|R^D|²/2, the ξ-part of
// Ric̃(V,V) gives +|R^D|²/4.
struct CurvatureNormContractions {
  double hh;          // frame contraction of the HH ξ-part
  double vv;          // frame contraction of the VV ξ-part
  double r_norm_sq;   // |R^D|²_g
};
CurvatureNormContractions curvature_norm_contractions(const BasePointData& b);

}  // namespace tmk
