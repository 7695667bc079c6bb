// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "choquet/distortion.hpp"
#include "choquet/distribution.hpp"

namespace choquet {

// Scalar exploratory linear-quadratic model: state drift A x + B u, state
// diffusion C x + D u, running reward -M/2 x^2 - R x u - N/2 u^2 - P x - L u,
// discount rho, exploration temperature lambda.
struct LQModel {
  double A = 0.0, B = 1.0, C = 0.0, D = 0.0;
  double M = 1.0, R = 0.0, N = 1.0, P = 0.0, L = 0.0;
  double rho = 1.0;
  double lambda = 1.0;
};

struct WellposedReport {
  struct Check {
    std::string name;
    bool pass = false;
    double margin = 0.0;  // positive slack when passing, deficit when not
  };
  std::vector<Check> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Quadratic value-function coefficients V(x) = k2/2 x^2 + k1 x + k0.
struct LQSolution {
  double delta = 0.0;
  double k2 = 0.0;
  double k1 = 0.0;
  double k0 = 0.0;
  double norm_hprime = 0.0;  // derivative norm of the chosen distortion
};

struct RiccatiResiduals {
  double r2 = 0.0, r1 = 0.0, r0 = 0.0;
};

struct PolicyMoments {
  double mu_star = 0.0;
  double var_star = 0.0;
};

WellposedReport check_wellposed(const LQModel& model);

// Closed-form coefficients; k2 is the negative root of its quadratic,
// computed in rationalized form so the B = D = 0 limit needs no branch.
LQSolution solve(const LQModel& model, const Distortion& d);

// Residuals of the three defining equations; zero at the solve() output.
RiccatiResiduals riccati_residuals(const LQModel& model, const LQSolution& sol);

double value(const LQSolution& sol, double x);

// Optimal feedback law at state x: location mu_star(x), spread
// lambda h'(1-p)/(N - k2 D^2); emitted as the matching catalog kind.
Distribution policy(const LQModel& model, const LQSolution& sol,
                    const Distortion& d, double x);

PolicyMoments policy_moments(const LQModel& model, const LQSolution& sol,
                             double x);

// rho V(x) minus the maximized Hamiltonian at x; vanishes for the solution.
double hjb_residual(const LQModel& model, const LQSolution& sol,
                    const Distortion& d, double x);

}  // namespace choquet
