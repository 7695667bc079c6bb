// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace choquet::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
};

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Returns the cached n-point rule; nodes are found by Newton iteration on
// the Legendre polynomial.
const Rule& gauss_legendre(int n);

// Fixed n-point Gauss-Legendre estimate of the integral over [a, b].
double fixed(const std::function<double(double)>& f, double a, double b, int n);

// Adaptive bisection driven by a GL(16)/GL(32) difference estimate.  tol is
// an absolute tolerance per accepted panel; knots inside (a, b) seed panel
// edges so integrand kinks never sit inside a panel.
Result adaptive(const std::function<double(double)>& f, double a, double b,
                double tol = 1e-9, const std::vector<double>& knots = {},
                int max_depth = 48);

// Integrand over (0, 1) addressed through the distance to the nearer
// endpoint: from_zero(p) = f(p), from_one(s) = f(1 - s).  Addressing the
// upper tail by s keeps full precision where 1 - s would round to 1.
struct UnitIntegrand {
  std::function<double(double)> from_zero;
  std::function<double(double)> from_one;
};

// Integral of f over (0, 1) where f may have an integrable singularity at
// either endpoint (logarithmic or slower-than-power growth).  A singular end
// is folded through p = exp(-t) so quadrature nodes approach it
// geometrically; Gauss-Legendre never evaluates f at 0 or 1.
Result unit_interval(const UnitIntegrand& f, bool singular_at_zero,
                     bool singular_at_one, double tol = 1e-9,
                     const std::vector<double>& knots = {});

// Convenience overload for integrands safe to evaluate at plain 1 - s.
Result unit_interval(const std::function<double(double)>& f,
                     bool singular_at_zero, bool singular_at_one,
                     double tol = 1e-9, const std::vector<double>& knots = {});

// Deterministic pairwise summation; the result depends only on the order of
// the data, never on chunking or thread count.
double pairwise_sum(const double* data, std::size_t n);
double pairwise_sum(const std::vector<double>& v);

}  // namespace choquet::quad
