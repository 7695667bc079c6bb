// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "choquet/distortion.hpp"
#include "choquet/lq.hpp"
#include "choquet/rng.hpp"

namespace choquet {

enum class RegularizerMode {
  closed_form,  // exploration bonus sigma * |h'| per step, exact for the policy
  quadrature,   // re-evaluate the regularizer integral per step (spot checks)
};

struct SimConfig {
  double dt = 1e-2;
  double horizon = 0.0;  // truncation floor; effective T = max(10/rho, horizon)
  std::size_t n_paths = 1000;
  std::uint64_t seed = 12345;
  bool antithetic = false;
  int n_checkpoints = 10;
  RegularizerMode mode = RegularizerMode::closed_form;
};

// States retained at checkpoint times only; row k holds every path's state
// at times[k], with times.front() = 0 and times.back() = T.
struct PathEnsemble {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
};

struct TransversalityReport {
  std::vector<std::pair<double, double>> entries;  // (T_k, e^{-rho T_k} E[X^2])
  bool pass = false;
};

struct SimResult {
  double value_estimate = 0.0;
  double std_error = 0.0;
  TransversalityReport transversality;
  bool tail_warning = false;  // discounted final X^2 large vs the estimate
};

// Euler-Maruyama paths of dX = (A X + B mu) dt + sqrt((C X + D mu)^2
// + D^2 sigma^2) dW under an arbitrary feedback (mean_fn, var_fn).
PathEnsemble simulate_state(const LQModel& model,
                            const std::function<double(double)>& mean_fn,
                            const std::function<double(double)>& var_fn,
                            double x0, const SimConfig& cfg);

// Monte Carlo estimate of the discounted running reward plus exploration
// bonus under the optimal policy, for comparison with value(sol, x0).
// Deterministic for fixed (seed, cfg) regardless of scheduling: per-path
// counter substreams, block-ordered pairwise aggregation.
SimResult estimate_value(const LQModel& model, const LQSolution& sol,
                         const Distortion& d, double x0, const SimConfig& cfg);

// Discounted second-moment decay across the checkpoints of an ensemble.
TransversalityReport transversality_check(const PathEnsemble& paths,
                                          double rho);

}  // namespace choquet
