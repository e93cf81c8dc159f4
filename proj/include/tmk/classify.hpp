#pragma once

#include <map>
#include <optional>
#include <string>

#include "tmk/sampling.hpp"
#include "tmk/tangent.hpp"

namespace tmk {

// Classification flags plus the numerical residuals that justify them, for
// one (g, D) model over a seeded sample set.
struct StructureReport {
  // Flags, each decided by its residual against the 1e-8 threshold.
  bool torsion_D_zero = false;
  bool torsion_Dstar_zero = false;
  bool flat_D = false;       // torsion and curvature of D both vanish
  bool flat_Dstar = false;
  bool almost_kahler = false;   // == torsion_Dstar_zero (cross-checked on dΩ)
  bool kahler = false;          // == almost_kahler && flat_D
  bool hessian = false;         // == flat_D && flat_Dstar
  bool einstein_necessary_RD_zero = false;  // |R^D| below threshold
  bool hesse_einstein = false;  // hessian && β ≈ c'·g
  bool pseudo_metric = false;   // base metric indefinite at some sample

  std::map<std::string, double> residuals;  // sup-norms over samples
  std::optional<double> einstein_constant_estimate;
  std::optional<double> hesse_einstein_constant_estimate;

  // Frame contractions of the ξ-parts of the lifted Ricci versus |R^D|²
  // (sup over samples of the two reconstruction errors).
  double econdi2_hh_error = 0.0;
  double econdi2_vv_error = 0.0;
  double r_norm_sq_max = 0.0;

  int signature_positive = 0;  // base metric signature at the first sample
  int signature_negative = 0;

  SampleSpec sample_spec;

  // Internal-consistency findings (flag vs. independent residual); empty on
  // a clean run.
  std::vector<std::string> inconsistencies;
};

inline constexpr double kFlagThreshold = 1e-8;
inline constexpr double kNonzeroThreshold = 1e-3;

StructureReport classify(const MetricField& g, const ConnectionField& D,
                         const SampleSpec& spec);

}  // namespace tmk
