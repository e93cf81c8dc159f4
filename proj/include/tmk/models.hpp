#pragma once

#include <array>
#include <string>
#include <utility>

#include "tmk/fields.hpp"
#include "tmk/geometry.hpp"

namespace tmk {

// A (metric, connection) pair ready for classification; D is the structure
// connection that builds J and the Sasaki metric.
struct Model {
  MetricPtr g;
  ConnectionPtr D;
  int n = 0;
  std::string name;
};

using Box = std::vector<std::array<double, 2>>;

// ---------------------------------------------------------------------------
// Statistical models: Gaussian families parametrized through a linear map
// ρ(ξ) = Σ_a ξ^a B_a into symmetric matrices, chart (θ, ξ) of dimension n+m.

struct RhoSpec {
  int m = 0;                  // parameter dimension
  int n = 0;                  // matrix size
  std::vector<Mat> basis;     // m constant symmetric n x n matrices
  Box domain_box;             // subset of ℝ^m where ρ(ξ) must stay PD
};

// Fisher metric of the family: the coordinate Hessian of
//   φ(θ,ξ) = ½(θᵀ ρ(ξ)⁻¹ θ - log det ρ(ξ)),
// evaluated in closed form through jet arithmetic (exact derivatives).
class FisherMetric : public MetricField {
public:
  explicit FisherMetric(RhoSpec spec);
  int max_order() const override { return 3; }
  JetMat components(std::span<const double> x, int order) const override;
  const RhoSpec& spec() const { return spec_; }

private:
  RhoSpec spec_;
};

struct StatisticalModel {
  MetricPtr g_rho;
  ConnectionPtr D_flat;   // Γ ≡ 0 in the (θ, ξ) chart
  ConnectionPtr D_dual;   // dual of D_flat w.r.t. g_rho
  RhoSpec spec;
  int chart_dim = 0;      // n + m

  // The pair used for the Kähler construction on TM: (g_ρ, D*).
  Model structure() const;
  // The flat pair (g_ρ, D).
  Model flat_pair() const;
};

StatisticalModel build_statistical_model(const RhoSpec& spec);

// ρ(ξ¹,ξ²) = [[ξ¹, aξ¹+bξ²],[aξ¹+bξ², ξ²]]; the box is grid-validated for
// positive definiteness and shrunk toward its center if needed.
RhoSpec build_rho_normal_form(double a, double b, Box box);

// Reduction of a general 2x2 spec to normal form by the two-case recipe
// (diagonal-entry coordinates when independent, else a congruence by a
// fixed matrix first).  The chart map (θ, ξ) -> (A θ, S ξ) is an isometry
// of Fisher metrics.
struct RhoReduction {
  double a = 0.0, b = 0.0;
  Mat xi_transform;      // S
  Mat theta_transform;   // A (identity when case 1 applies directly)
  RhoSpec normal_spec;
};
RhoReduction reduce_rho_to_normal_form(const RhoSpec& spec);

// ---------------------------------------------------------------------------
// Weyl family on S¹ x S^{n-1}(r): ω = k dθ, D the torsion-free connection
// with Dg = ω ⊗ g, and the deformed metric g_λ = g + (λ/|ω|²) ω ⊗ ω.

struct WeylSpec {
  int n = 3;        // total dimension, >= 3
  double r = 1.0;   // sphere radius
  double k = 0.0;   // 1-form coefficient
  double lambda = 0.0;
};

class WeylConnection : public ConnectionField {
public:
  WeylConnection(MetricPtr g, double k);
  int max_order() const override { return g_->max_order() - 1; }
  JetMat components(std::span<const double> x, int order) const override;

private:
  MetricPtr g_;
  double k_;
};

struct WeylModel {
  MetricPtr g_base;           // product metric
  MetricPtr g_lambda;
  ConnectionPtr D;            // Weyl connection
  ConnectionPtr D_star_lambda;
  WeylSpec spec;

  // The pair generating the 1-parameter family on TM: (g_λ, D*_λ).
  Model structure() const;
};

WeylModel build_weyl_product(const WeylSpec& spec);

// k with vanishing curvature of D per the closed-form rule; n >= 3.
std::pair<double, double> flat_k_for(int n, double s_N);

// ---------------------------------------------------------------------------
// Custom expression-defined models.

Model build_custom(const std::vector<std::string>& g_exprs,
                   const std::vector<std::string>& gamma_exprs, int n,
                   const Box& domain_box);

// Round sphere S² of radius 1 in polar coordinates with its Levi-Civita
// connection (chart: x1 polar angle, x2 azimuth).
Model unit_sphere_levi_civita();

// Flat Euclidean plane with the coordinate connection.
Model euclidean_plane();

// g = diag(e^{x1}, e^{x2}) with the flat coordinate connection; a Hessian
// pair with potential e^{x1} + e^{x2}.
Model exp_diag_hessian();

}  // namespace tmk
