#pragma once

#include <string>
#include <vector>

#include "tmk/classify.hpp"
#include "tmk/models.hpp"
#include "tmk/symplectic.hpp"

namespace tmk {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

// Exact-identity residuals over the sample set: torsion/curvature duality,
// involution, first Bianchi (torsion-free connections), Levi-Civita defect,
// Hermitian compatibility of (J, g̃), Ω = g̃(J·,·), J² = -Id, the frame
// pullback of the Sasaki metric, and closedness of the pulled-back
// symplectic form.
std::vector<CheckResult> run_identity_suite(const Model& model, const SampleSpec& spec);

// Lifted-formula versus brute-force equivalence: the six curvature slots,
// the three Ricci slots, dΩ on lifted triples, and the |R|² contractions.
std::vector<CheckResult> run_oracle_suite(const Model& model, const SampleSpec& spec);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace tmk
