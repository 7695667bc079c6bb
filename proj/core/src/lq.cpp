// SPDX-License-Identifier: Apache-2.0
#include "choquet/lq.hpp"

#include <cmath>
#include <stdexcept>

#include "choquet/static_opt.hpp"

namespace choquet {

WellposedReport check_wellposed(const LQModel& m) {
  WellposedReport rep;
  auto add = [&rep](const std::string& name, bool pass, double margin) {
    rep.checks.push_back({name, pass, margin});
  };
  add("control_cost_positive", m.N > 0.0, m.N);
  add("state_cost_nonneg", m.M >= 0.0, m.M);
  add("cost_determinant", m.M * m.N > m.R * m.R, m.M * m.N - m.R * m.R);
  add("discount_positive", m.rho > 0.0, m.rho);
  add("temperature_positive", m.lambda > 0.0, m.lambda);
  if (m.N > 0.0) {
    const double cross =
        (m.D * m.D * m.R * m.R - 2.0 * m.N * m.R * (m.B + m.C * m.D)) / m.N;
    const double margin =
        m.rho - (2.0 * m.A + m.C * m.C + std::max(cross, 0.0));
    add("discount_dominates", margin > 0.0, margin);
  } else {
    add("discount_dominates", false, 0.0);
  }
  return rep;
}

LQSolution solve(const LQModel& m, const Distortion& d) {
  const WellposedReport rep = check_wellposed(m);
  if (!rep.ok()) {
    std::string msg = "model is not well posed:";
    for (const auto& c : rep.checks)
      if (!c.pass) msg += " " + c.name;
    throw std::invalid_argument(msg);
  }
  const double norm = d.l2_norm();
  if (!std::isfinite(norm) || !(norm > 0.0))
    throw std::invalid_argument(
        "solver needs a distortion with finite non-zero derivative norm");

  const double BCD = m.B + m.C * m.D;
  const double q = BCD * BCD + (m.rho - 2.0 * m.A - m.C * m.C) * m.D * m.D;
  LQSolution sol;
  sol.norm_hprime = norm;
  sol.delta = (m.rho - (2.0 * m.A + m.C * m.C)) * m.N + 2.0 * BCD * m.R -
              m.D * m.D * m.M;
  // q k^2 - delta k + (R^2 - MN) = 0, negative root; rationalized so the
  // radical never cancels and q -> 0 degrades to the linear-equation root
  const double det = m.R * m.R - m.M * m.N;  // negative by well-posedness
  const double disc = sol.delta * sol.delta - 4.0 * q * det;
  if (disc < 0.0)
    throw std::logic_error("negative discriminant in a well-posed model");
  sol.k2 = 2.0 * det / (sol.delta + std::sqrt(disc));

  const double G = m.N - sol.k2 * m.D * m.D;
  const double den =
      sol.k2 * m.B * BCD + (m.A - m.rho) * G - m.B * m.R;
  sol.k1 = (m.P * G + m.L * sol.k2 * BCD - m.L * m.R) / den;
  const double top = sol.k1 * m.B - m.L;
  sol.k0 = (top * top + m.lambda * m.lambda * norm * norm) /
           (2.0 * m.rho * G);
  return sol;
}

RiccatiResiduals riccati_residuals(const LQModel& m, const LQSolution& sol) {
  const double G = m.N - sol.k2 * m.D * m.D;
  if (!(G > 0.0))
    throw std::invalid_argument("residuals need N - k2 D^2 > 0");
  const double BCD = m.B + m.C * m.D;
  const double u = sol.k2 * BCD - m.R;
  const double top = sol.k1 * m.B - m.L;
  RiccatiResiduals r;
  r.r2 = m.rho * sol.k2 -
         (u * u / G + sol.k2 * (2.0 * m.A + m.C * m.C) - m.M);
  r.r1 = m.rho * sol.k1 - (top * u / G + sol.k1 * m.A - m.P);
  r.r0 = m.rho * sol.k0 -
         (top * top + m.lambda * m.lambda * sol.norm_hprime * sol.norm_hprime) /
             (2.0 * G);
  return r;
}

double value(const LQSolution& sol, double x) {
  return 0.5 * sol.k2 * x * x + sol.k1 * x + sol.k0;
}

PolicyMoments policy_moments(const LQModel& m, const LQSolution& sol,
                             double x) {
  const double G = m.N - sol.k2 * m.D * m.D;
  PolicyMoments pm;
  pm.mu_star =
      ((sol.k2 * (m.B + m.C * m.D) - m.R) * x + sol.k1 * m.B - m.L) / G;
  const double spread = m.lambda * sol.norm_hprime / G;
  pm.var_star = spread * spread;
  return pm;
}

Distribution policy(const LQModel& m, const LQSolution& sol,
                    const Distortion& d, double x) {
  // The feedback law is the static maximizer at the state's policy moments;
  // delegating keeps the identity exact, bit for bit.
  const PolicyMoments pm = policy_moments(m, sol, x);
  return maximize(d, {pm.mu_star, std::sqrt(pm.var_star)}).distribution;
}

double hjb_residual(const LQModel& m, const LQSolution& sol,
                    const Distortion& d, double x) {
  const PolicyMoments pm = policy_moments(m, sol, x);
  const double mu = pm.mu_star;
  const double sig = std::sqrt(pm.var_star);
  const double vp = sol.k2 * x + sol.k1;   // V'
  const double vpp = sol.k2;               // V''
  const double drift = m.A * x + m.B * mu;
  const double diff_sq =
      (m.C * x + m.D * mu) * (m.C * x + m.D * mu) +
      m.D * m.D * pm.var_star;
  const double reward = -0.5 * m.M * x * x - m.R * x * mu -
                        0.5 * m.N * (mu * mu + pm.var_star) - m.P * x -
                        m.L * mu;
  const double reg = m.lambda * sig * sol.norm_hprime;
  const double rhs = reward + reg + vp * drift + 0.5 * vpp * diff_sq;
  return m.rho * value(sol, x) - rhs;
}

}  // namespace choquet
