// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "choquet/distortion.hpp"
#include "choquet/distribution.hpp"
#include "choquet/rng.hpp"

namespace choquet {

// Mean and standard deviation pinning the feasible set of the static problem.
struct MVConstraint {
  double m = 0.0;
  double s = 1.0;
};

struct MaximizeResult {
  Distribution distribution;
  double max_value = 0.0;
};

// Closed-form maximizer of the regularizer over laws with mean m and standard
// deviation s: quantile m + s h'(1-p)/|h'|, value s|h'|.  Returns the matching
// catalog kind when the distortion pins one down.  Requires a continuous,
// concave distortion with 0 < |h'| < infinity.
MaximizeResult maximize(const Distortion& d, const MVConstraint& c);

// Randomized search for a feasible law beating the closed-form bound; the
// independent check of the optimality claim.
struct FalsifyReport {
  std::size_t trials = 0;
  std::size_t atoms = 0;
  double bound = 0.0;       // s |h'|
  double best_value = 0.0;  // largest regularizer value found
  double margin = 0.0;      // bound - best_value
  bool pass = false;        // no trial exceeded bound + 1e-9
  std::vector<double> best_atoms, best_probs;
};
FalsifyReport oracle_falsify(const Distortion& d, const MVConstraint& c,
                             std::size_t trials, std::size_t atoms,
                             RngStream rng);

// Equality case of the standard-deviation bound sigma >= sqrt(3) Phi for the
// quadratic distortion: the uniform optimizer attains it.
struct GlasserReport {
  double s = 0.0;
  double sigma = 0.0;       // std dev of the uniform optimizer
  double phi = 0.0;         // regularizer value at the optimizer
  double expected = 0.0;    // s / sqrt(3)
  bool pass = false;
};
GlasserReport glasser_check(double s);

}  // namespace choquet
