// SPDX-License-Identifier: Apache-2.0
#include "choquet/regularizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "choquet/quadrature.hpp"

namespace choquet {

namespace {

constexpr double kEps = 2.220446049250313e-16;

bool is_discrete_kind(const Distribution& pi) {
  switch (pi.kind()) {
    case Distribution::Kind::discrete:
    case Distribution::Kind::two_point:
    case Distribution::Kind::three_point:
      return true;
    default:
      return false;
  }
}

// A jump of h at t and mass of the quantile at 1 - t cannot share a point;
// the Stieltjes integral is undefined there.
void reject_mixed_discontinuity(const Distortion& d, const Distribution& pi) {
  for (double t : d.jump_ps()) {
    if (t <= 0.0 || t >= 1.0) continue;
    const double lq = pi.left_quantile(1.0 - t);
    const double rq = pi.right_quantile(1.0 - t);
    if (rq - lq > 1e-12 * std::max(1.0, std::abs(lq)))
      throw std::domain_error(
          "distortion and quantile jump at a common interior point");
  }
}

RegularizerValue finish(double value, double abs_err,
                        RegularizerValue::Route route) {
  RegularizerValue out;
  // the integral is non-negative for valid distortions; trim fp residue
  out.value = value < 0.0 && value > -1e-10 ? 0.0 : value;
  out.route = route;
  out.est_abs_error = abs_err;
  return out;
}

}  // namespace

RegularizerValue phi_quantile(const Distortion& d, const Distribution& pi) {
  reject_mixed_discontinuity(d, pi);

  // Exact Stieltjes sum over the atoms: sum x_i (h(1-c_{i-1}) - h(1-c_i)).
  if (is_discrete_kind(pi)) {
    const auto& xs = pi.discrete_atoms();
    const auto& cums = pi.discrete_cums();
    for (double t : d.jump_ps())
      for (std::size_t i = 0; i + 1 < cums.size(); ++i)
        if (std::abs((1.0 - t) - cums[i]) <= 1e-14)
          throw std::domain_error(
              "distortion and quantile jump at a common interior point");
    double sum = 0.0, abs_acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double term = xs[i] * (d.h(1.0 - prev) - d.h(1.0 - cums[i]));
      sum += term;
      abs_acc += std::abs(term);
      prev = cums[i];
    }
    return finish(sum, 4.0 * kEps * abs_acc, RegularizerValue::Route::quantile);
  }

  // Piecewise-constant h': slopes times exact quantile integrals, plus any
  // point masses of dh at interior jumps of h.
  if (d.piecewise_linear_h()) {
    const auto steps = d.h_prime_steps();
    double sum = 0.0, abs_acc = 0.0;
    for (std::size_t k = 0; k < steps.values.size(); ++k) {
      const double a = steps.edges[k], b = steps.edges[k + 1];
      const double term =
          steps.values[k] * pi.integral_quantile(1.0 - b, 1.0 - a);
      sum += term;
      abs_acc += std::abs(term);
    }
    const auto jp = d.jump_ps();
    const auto jm = d.jump_sizes();
    for (std::size_t j = 0; j < jp.size(); ++j) {
      const double q = jp[j] >= 1.0 ? pi.left_quantile(1.0)
                                    : pi.right_quantile(1.0 - jp[j]);
      const double term = jm[j] * q;
      sum += term;
      abs_acc += std::abs(term);
    }
    return finish(sum, 4.0 * kEps * abs_acc, RegularizerValue::Route::quantile);
  }

  // Smooth h': adaptive quadrature of Q(1-p) h'(p), endpoint-aware.
  quad::UnitIntegrand f;
  f.from_zero = [&d, &pi](double p) {
    return pi.upper_quantile(p) * d.h_prime(p);
  };
  f.from_one = [&d, &pi](double s) {
    return pi.left_quantile(s) * d.h_prime_from_one(s);
  };
  std::vector<double> knots = d.knots();
  for (double k : pi.quantile_knots()) {
    const double p = 1.0 - k;
    if (p > 0.0 && p < 1.0) knots.push_back(p);
  }
  const bool sing0 = d.hprime_unbounded_at_zero() || !pi.bounded_above();
  const bool sing1 = d.hprime_unbounded_at_one() || !pi.bounded_below();
  const auto r = quad::unit_interval(f, sing0, sing1, 1e-10, knots);
  return finish(r.value, r.abs_error + 1e-12,
                RegularizerValue::Route::quantile);
}

RegularizerValue phi_survival(const Distortion& d, const Distribution& pi) {
  const double h1 = d.h(1.0);  // zero for valid distortions

  // Piecewise-constant survival: exact segment sums over atom gaps.
  if (is_discrete_kind(pi)) {
    const auto& xs = pi.discrete_atoms();
    const auto& cums = pi.discrete_cums();
    std::vector<double> cuts(xs.begin(), xs.end());
    cuts.push_back(0.0);  // split sign change even when atoms straddle zero
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double sum = 0.0, abs_acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
      double val = d.h(pi.survival(mid));
      if (mid < 0.0) val -= h1;
      const double term = val * (cuts[i + 1] - cuts[i]);
      sum += term;
      abs_acc += std::abs(term);
    }
    return finish(sum, 4.0 * kEps * abs_acc, RegularizerValue::Route::survival);
  }

  // General case: adaptive quadrature over the core support, then geometric
  // tail extension until the contribution falls below tolerance.
  auto g = [&d, &pi, h1](double x) {
    double val = d.h(std::clamp(pi.survival(x), 0.0, 1.0));
    if (x < 0.0) val -= h1;
    return val;
  };
  const double tail0 = 1e-3;
  const double lo0 =
      std::min(pi.bounded_below() ? pi.support_lo() : pi.left_quantile(tail0),
               0.0);
  const double hi0 =
      std::max(pi.bounded_above() ? pi.support_hi() : pi.upper_quantile(tail0),
               0.0);
  std::vector<double> knots = pi.atom_positions();
  knots.push_back(0.0);
  if (pi.kind() == Distribution::Kind::grid_quantile)
    for (double q : pi.grid_qs()) knots.push_back(q);
  // h(S(x)) kinks at the support edges and wherever S crosses a kink of h;
  // panels must not straddle them or the acceptance test can be fooled.
  if (pi.bounded_below()) knots.push_back(pi.support_lo());
  if (pi.bounded_above()) knots.push_back(pi.support_hi());
  for (double p : d.knots())
    if (p > 0.0 && p < 1.0) knots.push_back(pi.upper_quantile(p));
  quad::Result acc = quad::adaptive(g, lo0, hi0, 1e-10, knots);

  double trunc_err = 0.0;
  if (!pi.bounded_above()) {
    double eps = tail0;
    double prev_edge = hi0;
    for (int j = 0; j < 6; ++j) {
      const double next_eps = eps * 1e-2;
      const double edge = pi.upper_quantile(next_eps);
      const quad::Result chunk = quad::adaptive(g, prev_edge, edge, 1e-11, knots);
      acc.value += chunk.value;
      acc.abs_error += chunk.abs_error;
      prev_edge = edge;
      eps = next_eps;
      if (std::abs(chunk.value) < 1e-10 * std::max(1.0, std::abs(acc.value))) {
        trunc_err += std::abs(chunk.value);
        break;
      }
      if (j == 5) trunc_err += std::abs(chunk.value);
    }
  }
  if (!pi.bounded_below()) {
    double eps = tail0;
    double prev_edge = lo0;
    for (int j = 0; j < 6; ++j) {
      const double next_eps = eps * 1e-2;
      const double edge = pi.left_quantile(next_eps);
      const quad::Result chunk = quad::adaptive(g, edge, prev_edge, 1e-11, knots);
      acc.value += chunk.value;
      acc.abs_error += chunk.abs_error;
      prev_edge = edge;
      eps = next_eps;
      if (std::abs(chunk.value) < 1e-10 * std::max(1.0, std::abs(acc.value))) {
        trunc_err += std::abs(chunk.value);
        break;
      }
      if (j == 5) trunc_err += std::abs(chunk.value);
    }
  }
  return finish(acc.value, acc.abs_error + trunc_err,
                RegularizerValue::Route::survival);
}

double differential_entropy(const Distribution& pi) {
  switch (pi.kind()) {
    case Distribution::Kind::uniform:
      return std::log(pi.param_b() - pi.param_a());
    case Distribution::Kind::normal:
      return 0.5 * std::log(2.0 * M_PI * M_E * pi.param_b());
    case Distribution::Kind::shifted_exponential:
      return 1.0 - std::log(pi.param_b());
    default:
      throw std::invalid_argument(
          "differential entropy requires an absolutely continuous law "
          "(uniform, normal, or shifted-exponential)");
  }
}

}  // namespace choquet
