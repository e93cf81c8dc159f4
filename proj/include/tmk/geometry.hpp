#pragma once

#include <span>

#include "tmk/fields.hpp"
#include "tmk/linalg.hpp"
#include "tmk/tensor.hpp"

namespace tmk {

// Index conventions, fixed across the library:
//   D_{∂_i} ∂_j = Γ^k_{ij} ∂_k                  (first lower index differentiates)
//   T^k_{ij} = Γ^k_{ij} - Γ^k_{ji}
//   R(∂_i,∂_j)∂_k = R^l_{kij} ∂_l  with
//     R^l_{kij} = ∂_i Γ^l_{jk} - ∂_j Γ^l_{ik} + Γ^l_{im}Γ^m_{jk} - Γ^l_{jm}Γ^m_{ik}
//   R_g(W,Z,X,Y) = g(R(X,Y)Z, W), stored (w,z,x,y)
//   (Dg)(k;i,j)        = (D_{∂_k} g)(∂_i,∂_j)
//   (D²g)(m,k;i,j)     = (D_{∂_m}(Dg))(∂_k,∂_i,∂_j)   (outer derivative first)
//   (DR)(m;l,k,i,j)    = (D_{∂_m} R)^l_{kij}
//   γ^k_{ij} = Γ^k_{ij}(D) - Γ^k_{ij}(∇);  Tr(γ)(∂_j) = γ^i_{ij}
//   Tr(T)(∂_j) = T^i_{ij}
// Orthonormal-frame sums in curvature formulas are realized as metric
// contractions g^{ab}, which extends them to indefinite metrics.

struct T3 {
  int n = 0;
  std::vector<double> d;
  T3() = default;
  explicit T3(int n_) : n(n_) {
    d.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  }
  double& operator()(int a, int b, int c) {
    return d[(static_cast<std::size_t>(a) * n + b) * n + c];
  }
  double operator()(int a, int b, int c) const {
    return d[(static_cast<std::size_t>(a) * n + b) * n + c];
  }
  double sup_abs() const;
};

struct T4 {
  int n = 0;
  std::vector<double> d;
  T4() = default;
  explicit T4(int n_) : n(n_) {
    d.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
  }
  double& operator()(int a, int b, int c, int e) {
    return d[((static_cast<std::size_t>(a) * n + b) * n + c) * n + e];
  }
  double operator()(int a, int b, int c, int e) const {
    return d[((static_cast<std::size_t>(a) * n + b) * n + c) * n + e];
  }
  double sup_abs() const;
};

struct T5 {
  int n = 0;
  std::vector<double> d;
  T5() = default;
  explicit T5(int n_) : n(n_) {
    d.assign(static_cast<std::size_t>(n) * n * n * n * n, 0.0);
  }
  double& operator()(int a, int b, int c, int e, int f) {
    return d[(((static_cast<std::size_t>(a) * n + b) * n + c) * n + e) * n + f];
  }
  double operator()(int a, int b, int c, int e, int f) const {
    return d[(((static_cast<std::size_t>(a) * n + b) * n + c) * n + e) * n + f];
  }
};

// Everything the lifted-curvature formulas need at one base point,
// evaluated once from metric jets (order 3) and connection jets (order 2).
struct BasePointData {
  int n = 0;
  Vec x;
  Mat g, g_inv;
  T3 dg;          // ∂_k g_ij, (k,i,j)
  T3 gamma_D;     // Γ^k_{ij} of D, (k,i,j)
  T3 gamma_dual;  // Γ*^k_{ij}
  T3 gamma_lc;    // Γ^k_{ij} of ∇
  T4 R_D, R_dual, R_lc;        // R^l_{kij}, (l,k,i,j)
  T4 R04_D, R04_dual, R04_lc;  // R_g(W,Z,X,Y), (w,z,x,y)
  Mat ric_lc;                  // Ric^∇
  T3 T_D, T_dual;              // torsion, (k,i,j)
  Vec tr_T_dual;               // T*^i_{ij}, (j)
  T3 Dg;                       // (k,i,j)
  T4 D2g;                      // (m,k,i,j)
  T3 gamma_diff;               // γ^k_{ij}
  Vec tr_gamma;                // γ^i_{ij}, (j)
  T5 DR_D;                     // (m,l,k,i,j)
};

BasePointData make_base_point_data(const MetricField& g, const ConnectionField& D,
                                   std::span<const double> x);

// --- jet-level kernels (shared with the tangent-bundle oracle) --------------

// Christoffel jets of a metric given as an n x n jet matrix; one order lower.
JetMat christoffel_jets(const JetMat& gj, int n);
// R^l_{kij} jets from connection jets; one order lower.
JetMat curvature_jets(const JetMat& cj, int n);
// Γ*^k_{ij} jets of the dual connection from (gj, cj).
JetMat dual_gamma_jets(const JetMat& gj, const JetMat& cj, int n);
// (D_k g)(i,j) jets.
JetMat metric_cov_deriv_jets(const JetMat& gj, const JetMat& cj, int n);

// --- pointwise operations -------------------------------------------------

// Christoffel symbols of g at x as a (1,2) tensor value.
TensorValue levi_civita(const MetricField& g, std::span<const double> x);

// T^k_{ij} of D at x.
TensorValue torsion(const ConnectionField& D, std::span<const double> x);

// R^l_{kij} of D at x.
TensorValue curvature(const ConnectionField& D, std::span<const double> x);

// R_g(W,Z,X,Y) = g(R(X,Y)Z, W) from a (1,3) curvature value.
TensorValue lower_curvature(const MetricField& g, const TensorValue& R,
                            std::span<const double> x);

// Tensors whose components are jets; used to take covariant derivatives.
struct TensorJets {
  std::vector<Slot> variance;
  int n = 0;
  JetMat comp;  // n^rank jets, row-major in slot order
};

// Covariant derivative: one extra Down slot in FRONT (the direction), jets
// one order lower than the input.
TensorJets cov_deriv(const TensorJets& T, const JetMat& gamma_jets);

// (Dg)(k;i,j) at x.
TensorValue cov_deriv_metric(const MetricField& g, const ConnectionField& D,
                             std::span<const double> x);
// (D²g)(m,k;i,j) at x.
TensorValue cov_deriv2_metric(const MetricField& g, const ConnectionField& D,
                              std::span<const double> x);
// (DR)(m;l,k,i,j) at x.
TensorValue cov_deriv_curvature(const ConnectionField& D, std::span<const double> x);

// γ = Γ(D) - Γ(∇) and its trace one-form.
struct GammaDiff {
  TensorValue gamma;     // (Up, Down, Down)
  TensorValue trace;     // (Down)
};
GammaDiff gamma_diff(const ConnectionField& D, const MetricField& g,
                     std::span<const double> x);

// First and second Koszul forms of (g, D):
//   α_i = ∂_i log √|det g| - Γ^k_{ki},   β_ij = ∂_j α_i - Γ^k_{ji} α_k.
struct KoszulForms {
  TensorValue alpha;  // (Down)
  TensorValue beta;   // (Down, Down)
};
KoszulForms koszul_forms(const MetricField& g, const ConnectionField& D,
                         std::span<const double> x);

// |T|^2 with g-contractions per slot variance.
double tensor_norm_sq(const MetricField& g, const TensorValue& T,
                      std::span<const double> x);

// --- identity residuals (property-suite kernels) ---------------------------

// Duality of torsions (all basis triples):
//   g(T*(X,Y),Z) - [(D_X g)(Y,Z) - (D_Y g)(X,Z) + g(T(X,Y),Z)]
double dual_torsion_residual(const BasePointData& b);
// R*_g(Z,W,X,Y) + R_g(W,Z,X,Y)
double dual_curvature_residual(const BasePointData& b);
// Γ** - Γ componentwise.
double dual_involution_residual(const MetricField& g, const ConnectionField& D,
                                std::span<const double> x);
// Cyclic sum of R^D(X,Y)Z, meaningful for torsion-free D.
double first_bianchi_residual(const BasePointData& b);
// max(|∇g|, |T^∇|) for the Levi-Civita connection of g.
double levi_civita_defect(const MetricField& g, std::span<const double> x);

}  // namespace tmk
