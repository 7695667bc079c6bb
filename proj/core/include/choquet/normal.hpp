// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace choquet {

// Standard normal density.
double normal_pdf(double x);

// Standard normal distribution function, accurate in both tails.
double normal_cdf(double x);

// Standard normal quantile for p in (0, 1); returns -inf / +inf at the
// endpoints.  Rational initial guess refined by one Halley step, accurate to
// a few ulp across the full range.
double normal_quantile(double p);

}  // namespace choquet
