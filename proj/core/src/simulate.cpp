// SPDX-License-Identifier: Apache-2.0
#include "choquet/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "choquet/quadrature.hpp"
#include "choquet/regularizer.hpp"

namespace choquet {

namespace {

constexpr std::size_t kBlock = 4096;  // paths per aggregation block

struct Grid {
  std::size_t n_steps = 0;
  double T = 0.0;
  std::vector<std::size_t> ck_idx;
  std::vector<double> ck_times;
};

Grid make_grid(double T, const SimConfig& cfg) {
  if (!(cfg.dt > 0.0))
    throw std::invalid_argument("time step must be positive");
  if (!(T > cfg.dt))
    throw std::invalid_argument("time step must be smaller than the horizon");
  if (cfg.n_paths < 1)
    throw std::invalid_argument("at least one path is required");
  if (cfg.antithetic && cfg.n_paths % 2 != 0)
    throw std::invalid_argument("antithetic pairing needs an even path count");
  Grid g;
  g.n_steps = static_cast<std::size_t>(std::ceil(T / cfg.dt - 1e-9));
  g.T = static_cast<double>(g.n_steps) * cfg.dt;
  const int K = std::max(2, cfg.n_checkpoints);
  for (int k = 0; k <= K; ++k) {
    const std::size_t idx = static_cast<std::size_t>(
        std::llround(static_cast<double>(k) / K * g.n_steps));
    if (g.ck_idx.empty() || idx > g.ck_idx.back()) {
      g.ck_idx.push_back(idx);
      g.ck_times.push_back(static_cast<double>(idx) * cfg.dt);
    }
  }
  return g;
}

double guarded_sqrt(double v) {
  if (v < 0.0) {
    if (v < -1e-9) throw std::runtime_error("negative diffusion variance");
    v = 0.0;
  }
  return std::sqrt(v);
}

}  // namespace

PathEnsemble simulate_state(const LQModel& model,
                            const std::function<double(double)>& mean_fn,
                            const std::function<double(double)>& var_fn,
                            double x0, const SimConfig& cfg) {
  const Grid grid = make_grid(cfg.horizon, cfg);
  PathEnsemble out;
  out.times = grid.ck_times;
  out.states.assign(grid.ck_idx.size(), std::vector<double>(cfg.n_paths));
  const double sqrt_dt = std::sqrt(cfg.dt);
  const RngStream base(cfg.seed);

  for (std::size_t p = 0; p < cfg.n_paths; ++p) {
    RngStream stream = base.substream(cfg.antithetic ? p / 2 : p);
    const double sign = cfg.antithetic && (p % 2 == 1) ? -1.0 : 1.0;
    double x = x0;
    std::size_t ck = 0;
    if (grid.ck_idx[0] == 0) out.states[ck++][p] = x;
    for (std::size_t i = 0; i < grid.n_steps; ++i) {
      const double mu = mean_fn(x);
      const double var = var_fn(x);
      const double diff_sq =
          (model.C * x + model.D * mu) * (model.C * x + model.D * mu) +
          model.D * model.D * var;
      x += (model.A * x + model.B * mu) * cfg.dt +
           guarded_sqrt(diff_sq) * sqrt_dt * sign * stream.normal();
      if (ck < grid.ck_idx.size() && i + 1 == grid.ck_idx[ck])
        out.states[ck++][p] = x;
    }
  }
  return out;
}

TransversalityReport transversality_check(const PathEnsemble& paths,
                                          double rho) {
  if (paths.times.size() < 2)
    throw std::invalid_argument("transversality needs at least 2 checkpoints");
  TransversalityReport rep;
  for (std::size_t k = 0; k < paths.times.size(); ++k) {
    std::vector<double> sq(paths.states[k].size());
    for (std::size_t p = 0; p < sq.size(); ++p)
      sq[p] = paths.states[k][p] * paths.states[k][p];
    const double mean_sq = quad::pairwise_sum(sq) / sq.size();
    rep.entries.emplace_back(paths.times[k],
                             std::exp(-rho * paths.times[k]) * mean_sq);
  }
  // Decay is judged against the ensemble's own peak: starting at the origin
  // the initial entry is zero and noise builds the moment before the
  // discount kills it.
  double peak = 0.0;
  for (const auto& e : rep.entries) peak = std::max(peak, e.second);
  rep.pass = rep.entries.back().second < 1e-2 * (peak + 1e-12);
  return rep;
}

SimResult estimate_value(const LQModel& model, const LQSolution& sol,
                         const Distortion& d, double x0,
                         const SimConfig& cfg) {
  const double T = std::max(10.0 / model.rho, cfg.horizon);
  const Grid grid = make_grid(T, cfg);
  const double dt = cfg.dt;
  const double sqrt_dt = std::sqrt(dt);

  const double G = model.N - sol.k2 * model.D * model.D;
  const double mu_slope = (sol.k2 * (model.B + model.C * model.D) - model.R) / G;
  const double mu_int = (sol.k1 * model.B - model.L) / G;
  const double var_star = policy_moments(model, sol, 0.0).var_star;
  const double reg_closed =
      model.lambda * std::sqrt(var_star) * sol.norm_hprime;

  std::function<double(double)> reg_at;
  if (cfg.mode == RegularizerMode::closed_form) {
    reg_at = [reg_closed](double) { return reg_closed; };
  } else {
    reg_at = [&model, &sol, &d](double x) {
      return model.lambda * phi_quantile(d, policy(model, sol, d, x)).value;
    };
  }

  // exact discount integral over each step, flow held at the left endpoint
  std::vector<double> w(grid.n_steps);
  const double step_disc = -std::expm1(-model.rho * dt) / model.rho;
  for (std::size_t i = 0; i < grid.n_steps; ++i)
    w[i] = std::exp(-model.rho * static_cast<double>(i) * dt) * step_disc;

  const RngStream base(cfg.seed);
  const std::size_t n = cfg.n_paths;
  std::vector<double> path_vals(n);
  const std::size_t n_ck = grid.ck_idx.size();
  std::vector<double> ck_total(n_ck, 0.0);

  for (std::size_t b0 = 0; b0 < n; b0 += kBlock) {
    const std::size_t b1 = std::min(n, b0 + kBlock);
    std::vector<double> ck_block(n_ck, 0.0);
    for (std::size_t p = b0; p < b1; ++p) {
      RngStream stream = base.substream(cfg.antithetic ? p / 2 : p);
      const double sign = cfg.antithetic && (p % 2 == 1) ? -1.0 : 1.0;
      double x = x0;
      double acc = 0.0;
      std::size_t ck = 0;
      if (grid.ck_idx[0] == 0) ck_block[ck++] += x * x;
      for (std::size_t i = 0; i < grid.n_steps; ++i) {
        const double mu = mu_slope * x + mu_int;
        const double flow = -0.5 * model.M * x * x - model.R * x * mu -
                            0.5 * model.N * (mu * mu + var_star) -
                            model.P * x - model.L * mu + reg_at(x);
        acc += w[i] * flow;
        const double diff_sq =
            (model.C * x + model.D * mu) * (model.C * x + model.D * mu) +
            model.D * model.D * var_star;
        x += (model.A * x + model.B * mu) * dt +
             guarded_sqrt(diff_sq) * sqrt_dt * sign * stream.normal();
        if (ck < n_ck && i + 1 == grid.ck_idx[ck]) ck_block[ck++] += x * x;
      }
      path_vals[p] = acc;
    }
    for (std::size_t k = 0; k < n_ck; ++k) ck_total[k] += ck_block[k];
  }

  SimResult res;
  std::vector<double> g;
  if (cfg.antithetic) {
    g.resize(n / 2);
    for (std::size_t j = 0; j < g.size(); ++j)
      g[j] = 0.5 * (path_vals[2 * j] + path_vals[2 * j + 1]);
  } else {
    g = std::move(path_vals);
  }
  res.value_estimate = quad::pairwise_sum(g) / g.size();
  if (g.size() > 1) {
    std::vector<double> dev2(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double e = g[j] - res.value_estimate;
      dev2[j] = e * e;
    }
    res.std_error = std::sqrt(quad::pairwise_sum(dev2) /
                              (g.size() * (g.size() - 1.0)));
  }

  for (std::size_t k = 0; k < n_ck; ++k)
    res.transversality.entries.emplace_back(
        grid.ck_times[k],
        std::exp(-model.rho * grid.ck_times[k]) * ck_total[k] / n);
  double ck_peak = 0.0;
  for (const auto& e : res.transversality.entries)
    ck_peak = std::max(ck_peak, e.second);
  res.transversality.pass =
      res.transversality.entries.back().second < 1e-2 * (ck_peak + 1e-12);
  res.tail_warning = res.transversality.entries.back().second >
                     1e-3 * std::abs(res.value_estimate);
  return res;
}

}  // namespace choquet
