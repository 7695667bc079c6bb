// SPDX-License-Identifier: Apache-2.0
#include "choquet/static_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "choquet/regularizer.hpp"

namespace choquet {

namespace {

// The optimizer quantile m + s h'(1-p)/|h'| is non-decreasing only when h'
// is non-increasing, i.e. the distortion is concave.
void require_concave_continuous(const Distortion& d) {
  if (!d.jump_ps().empty())
    throw std::invalid_argument("maximizer requires a continuous distortion");
  if (!d.validate(513).concave_ok)
    throw std::invalid_argument("maximizer requires a concave distortion");
}

}  // namespace

MaximizeResult maximize(const Distortion& d, const MVConstraint& c) {
  if (!(c.s > 0.0))
    throw std::invalid_argument("constraint needs a positive std deviation");
  const double norm = d.l2_norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw std::invalid_argument(
        "maximizer needs a finite, non-zero derivative norm");
  require_concave_continuous(d);
  const double m = c.m, s = c.s;
  const double value = s * norm;

  using K = Distortion::Kind;
  switch (d.kind()) {
    case K::gini: {
      const double r = std::sqrt(3.0) * s;
      return {Distribution::uniform(m - r, m + r), value};
    }
    case K::gaussian_score:
      return {Distribution::normal(m, s * s), value};
    case K::cre:
      return {Distribution::shifted_exponential(m - s, 1.0 / s), value};
    case K::eps_greedy: {
      const double e = d.eps();
      return {Distribution::two_point(m - s * std::sqrt(e / (1.0 - e)),
                                      m + s * std::sqrt((1.0 - e) / e), e),
              value};
    }
    case K::wasserstein_sym:
      return {Distribution::two_point(m - s, m + s, 0.5), value};
    case K::wasserstein_asym: {
      const double a = d.alpha();
      return {Distribution::two_point(m - s * std::sqrt((1.0 - a) / a),
                                      m + s * std::sqrt(a / (1.0 - a)),
                                      1.0 - a),
              value};
    }
    case K::inter_es: {
      const double a = d.alpha();
      const double r = s / std::sqrt(2.0 * (1.0 - a));
      return {Distribution::three_point(m - r, m, m + r, 1.0 - a, 1.0 - a),
              value};
    }
    case K::from_quantile: {
      const Distribution& src = d.source();
      const double sd = src.std_dev();
      return {src.affine(m - s * d.source_mean() / sd, s / sd), value};
    }
    default: {
      // piecewise-constant h': atoms m + s v_k/|h'| carry the step widths,
      // in reverse order so the quantile ascends
      const auto steps = d.h_prime_steps();
      std::vector<double> atoms, probs;
      const std::size_t k = steps.values.size();
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = k - 1 - i;
        atoms.push_back(m + s * steps.values[j] / d.l2_norm());
        probs.push_back(steps.edges[j + 1] - steps.edges[j]);
      }
      return {Distribution::discrete(std::move(atoms), std::move(probs)),
              value};
    }
  }
}

FalsifyReport oracle_falsify(const Distortion& d, const MVConstraint& c,
                             std::size_t trials, std::size_t atoms,
                             RngStream rng) {
  if (trials < 1 || atoms < 3)
    throw std::invalid_argument("oracle needs trials >= 1 and atoms >= 3");
  FalsifyReport rep;
  rep.trials = trials;
  rep.atoms = atoms;
  rep.bound = c.s * d.l2_norm();
  rep.best_value = -std::numeric_limits<double>::infinity();

  for (std::size_t t = 0; t < trials; ++t) {
    RngStream stream = rng.substream(t);
    std::vector<double> xs(atoms), ws(atoms);
    double mu = 0.0, m2 = 0.0;
    for (int attempt = 0; attempt < 64; ++attempt) {
      double wsum = 0.0;
      for (std::size_t i = 0; i < atoms; ++i) {
        xs[i] = stream.normal();
        ws[i] = -std::log(stream.uniform01());
        wsum += ws[i];
      }
      mu = 0.0;
      for (std::size_t i = 0; i < atoms; ++i) {
        ws[i] /= wsum;
        mu += ws[i] * xs[i];
      }
      m2 = 0.0;
      for (std::size_t i = 0; i < atoms; ++i)
        m2 += ws[i] * (xs[i] - mu) * (xs[i] - mu);
      if (m2 > 1e-12) break;
    }
    const double scale = c.s / std::sqrt(m2);
    for (std::size_t i = 0; i < atoms; ++i)
      xs[i] = c.m + scale * (xs[i] - mu);
    const Distribution law = Distribution::discrete(xs, ws);
    const double phi = phi_quantile(d, law).value;
    if (phi > rep.best_value) {
      rep.best_value = phi;
      rep.best_atoms = law.discrete_atoms();
      rep.best_probs = law.discrete_probs();
    }
  }
  rep.margin = rep.bound - rep.best_value;
  rep.pass = rep.best_value <= rep.bound + 1e-9;
  return rep;
}

GlasserReport glasser_check(double s) {
  if (!(s > 0.0))
    throw std::invalid_argument("check needs a positive std deviation");
  GlasserReport rep;
  rep.s = s;
  rep.expected = s / std::sqrt(3.0);
  const MaximizeResult opt = maximize(Distortion::gini(), {0.0, s});
  rep.sigma = opt.distribution.std_dev();
  rep.phi = phi_quantile(Distortion::gini(), opt.distribution).value;
  rep.pass = std::abs(rep.phi - rep.expected) <= 1e-10 * std::max(1.0, s) &&
             std::abs(rep.sigma - s) <= 1e-12 * std::max(1.0, s);
  return rep;
}

}  // namespace choquet
