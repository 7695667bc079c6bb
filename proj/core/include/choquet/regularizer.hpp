// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "choquet/distortion.hpp"
#include "choquet/distribution.hpp"

namespace choquet {

// Value of a Choquet regularizer together with the route that produced it
// and an estimate of the numerical error.
struct RegularizerValue {
  enum class Route { quantile, survival };
  double value = 0.0;
  Route route = Route::quantile;
  double est_abs_error = 0.0;
  std::string route_name() const {
    return route == Route::quantile ? "quantile" : "survival";
  }
};

// Integral of Q(1-p) against dh(p).  Exact for discrete laws and for
// piecewise-linear h; adaptive quadrature otherwise.  Throws domain_error
// when h and the quantile jump at a common interior point.
RegularizerValue phi_quantile(const Distortion& d, const Distribution& pi);

// Integral of h(survival) over the real line, the independent cross-check
// route; unbounded supports are truncated adaptively.
RegularizerValue phi_survival(const Distortion& d, const Distribution& pi);

// Closed-form differential entropy for the absolutely continuous kinds;
// throws invalid_argument for laws carrying atoms.
double differential_entropy(const Distribution& pi);

}  // namespace choquet
