// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "choquet/distribution.hpp"

namespace choquet {

// Concave distortion function h on [0, 1] with h(0) = h(1) = 0, its
// right-derivative h', and the L2 norm of h'.  Catalog kinds carry closed
// forms; piecewise kinds carry an exact vertex table; from_quantile wraps a
// source distribution whose centered quantile is h'.
class Distortion {
 public:
  enum class Kind {
    eps_greedy,
    discrete_uniform,
    cre,
    gaussian_score,
    inter_es,
    wasserstein_sym,
    wasserstein_asym,
    gini,
    piecewise_linear,
    from_quantile,
  };

  struct ValidationReport {
    bool boundary_ok = false;
    bool concave_ok = false;
    bool nonneg_ok = false;
    bool ok() const { return boundary_ok && concave_ok && nonneg_ok; }
  };

  // Piecewise-constant h': values[i] on [edges[i], edges[i+1]).
  struct StepFunction {
    std::vector<double> edges;
    std::vector<double> values;
  };

  static Distortion eps_greedy(double eps);
  static Distortion discrete_uniform(double eps, int n);
  static Distortion cre();
  static Distortion gaussian_score();
  static Distortion inter_es(double alpha);
  static Distortion wasserstein_sym();
  static Distortion wasserstein_asym(double alpha);
  static Distortion gini();
  // Vertices (ps, hs) with ps spanning [0, 1]; duplicated p encodes a jump.
  static Distortion piecewise_linear(std::vector<double> ps,
                                     std::vector<double> hs);
  // h'(p) = Q(1 - p) - mean for the source quantile Q; mean must match the
  // source mean to 1e-8 or construction fails (h(1) would not vanish).
  static Distortion from_distribution(const Distribution& source, double mean);

  Kind kind() const { return kind_; }
  std::string kind_name() const;

  double h(double p) const;        // domain error outside [0, 1]
  double h_prime(double p) const;  // right-derivative; domain error outside [0, 1)
  // h'(1 - s) addressed through the distance s to 1, tail-accurate.
  double h_prime_from_one(double s) const;
  double l2_norm_sq() const;
  double l2_norm() const;
  double sup_h() const;

  double scale() const { return scale_; }
  Distortion scaled(double lambda) const;

  // True when h' is piecewise constant, enabling exact segment integrals.
  bool piecewise_linear_h() const;
  StepFunction h_prime_steps() const;
  std::vector<double> jump_ps() const;     // p-values where h itself jumps
  std::vector<double> jump_sizes() const;  // matching jump heights (scaled)
  std::vector<double> knots() const;       // interior breakpoints of h
  bool hprime_unbounded_at_zero() const;
  bool hprime_unbounded_at_one() const;

  ValidationReport validate(int grid_size = 2001) const;
  // Least concave majorant of a piecewise kind (upper hull of the vertices).
  Distortion concave_envelope() const;

  double eps() const { return a_; }
  double alpha() const { return a_; }
  int steps() const { return n_; }
  const Distribution& source() const;
  double source_mean() const { return src_mean_; }

 private:
  Distortion() = default;
  static Distortion from_vertices(Kind kind, double a, int n,
                                  std::vector<double> ps,
                                  std::vector<double> hs, double norm_sq);
  double h_raw(double p) const;
  double hprime_raw(double p) const;
  bool piecewise_kind() const;

  Kind kind_ = Kind::gini;
  double a_ = 0.0;    // eps or alpha parameter
  int n_ = 0;         // step count for discrete_uniform
  double scale_ = 1.0;
  std::vector<double> ps_, hs_;  // vertex table for piecewise kinds
  std::shared_ptr<const Distribution> src_;
  double src_mean_ = 0.0;
  double norm_sq_ = 0.0;  // unscaled integral of h'^2
};

}  // namespace choquet
