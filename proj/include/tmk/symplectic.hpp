#pragma once

#include "tmk/sampling.hpp"
#include "tmk/tangent.hpp"

namespace tmk {

// Pull-back of the canonical symplectic form of T*M under the metric
// isomorphism, in induced coordinates of TM:
//   xx-block (i,j) = Σ_k (∂_j g_ik - ∂_i g_jk) y^k,  xy-block = g_ij,  yy = 0.
Mat pullback_form_at(const MetricField& g, const TangentPoint& p);

// Coordinate exterior derivative of the pull-back form at p, maximized over
// basis triples; a pull-back of a symplectic form is closed.
double pullback_closedness_residual(const MetricField& g, const TangentPoint& p);

struct SymplecticMatch {
  double max_deviation = 0.0;  // sup over samples of ‖pullback - Ω‖
  bool matches = false;        // deviation within tolerance
  double torsion_Dstar = 0.0;  // sup of |T*| over the same samples
};

// The pull-back coincides with the Kähler form exactly when the dual
// connection is torsion-free; both sides are reported.
SymplecticMatch symplectic_match(const MetricField& g, const ConnectionField& D,
                                 const SampleSpec& spec, double tol = 1e-10);

}  // namespace tmk
