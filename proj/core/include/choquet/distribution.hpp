// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "choquet/rng.hpp"

namespace choquet {

// One-dimensional law with finite second moment, carried by its quantile
// function.  Instances are immutable after construction and cheap to copy;
// all accessors are safe to call concurrently.
class Distribution {
 public:
  enum class Kind {
    discrete,
    two_point,
    three_point,
    uniform,
    normal,
    shifted_exponential,
    grid_quantile,
    quantile_sum,
  };

  // ===== constructors ====================================================

  static Distribution dirac(double c);
  // Atoms are sorted and near-duplicates merged; probabilities must be
  // nonnegative and sum to 1 within 1e-12 (then renormalized exactly).
  // Two- and three-atom laws are tagged two_point / three_point.
  static Distribution discrete(std::vector<double> atoms,
                               std::vector<double> probs);
  static Distribution two_point(double lo, double hi, double p_hi);
  static Distribution three_point(double lo, double mid, double hi,
                                  double p_lo, double p_hi);
  static Distribution uniform(double a, double b);
  static Distribution normal(double mean, double var);
  // Law of shift + E where E is exponential with the given rate.
  static Distribution shifted_exponential(double shift, double rate);
  // Piecewise-linear quantile through (p_i, q_i); p spans [0, 1] and is
  // non-decreasing (duplicated p encodes a quantile jump), q non-decreasing.
  static Distribution grid_quantile(std::vector<double> ps,
                                    std::vector<double> qs);

  Kind kind() const { return kind_; }
  std::string kind_name() const;

  // ===== quantiles and moments ==========================================

  // Left-continuous quantile inf{x : F(x) >= p}, p in (0, 1].
  double left_quantile(double p) const;
  // Right-continuous quantile inf{x : F(x) > p}, p in [0, 1).
  double right_quantile(double p) const;
  // Q(1 - eps) addressed through the tail mass eps, so the upper tail keeps
  // full precision where 1 - eps would round to 1.
  double upper_quantile(double eps) const;
  // Exact integral of the quantile over [p_lo, p_hi].
  double integral_quantile(double p_lo, double p_hi) const;

  double mean() const { return mean_; }
  double variance() const { return var_; }
  double std_dev() const;

  double cdf(double x) const;       // P(X <= x)
  double survival(double x) const;  // P(X >= x)

  // Expected shortfall (1-p)^{-1} int_p^1 Q(r) dr, p in [0, 1).
  double es(double p) const;
  // Lower counterpart p^{-1} int_0^p Q(r) dr, p in (0, 1].
  double es_lower(double p) const;
  // Mean of the top-eps tail, eps in (0, 1]; equals es(1 - eps).
  double tail_mean(double eps) const;

  bool bounded_below() const;
  bool bounded_above() const;
  double support_lo() const;  // -inf when unbounded below
  double support_hi() const;  // +inf when unbounded above

  // Interior p-levels where the quantile jumps or changes slope; used to
  // place quadrature panel edges.
  std::vector<double> quantile_knots() const;
  bool piecewise_linear_quantile() const;

  // Atom positions and masses.  For grid laws an atom is a flat quantile
  // run of p-width above 1e-12.
  std::vector<double> atom_positions() const;
  std::vector<double> atom_masses() const;

  // Law of shift + scale * X, scale > 0.
  Distribution affine(double shift, double scale) const;

  // Inverse-transform sampling through the left quantile.
  double sample(RngStream& rng) const;
  std::vector<double> sample(RngStream& rng, std::size_t n) const;

  bool has_atoms() const;

  // Discrete payload (discrete / two_point / three_point kinds only).
  const std::vector<double>& discrete_atoms() const { return xs_; }
  const std::vector<double>& discrete_probs() const { return ws_; }
  const std::vector<double>& discrete_cums() const { return cums_; }

  // Grid payload (grid_quantile kind only).
  const std::vector<double>& grid_ps() const { return cums_; }
  const std::vector<double>& grid_qs() const { return xs_; }

  // Closed-form parameters (uniform: a, b; normal: mean, var;
  // shifted_exponential: shift, rate).
  double param_a() const { return a_; }
  double param_b() const { return b_; }

 private:
  Distribution() = default;
  void finish_moments();

  friend Distribution quantile_add(const Distribution&, const Distribution&);

  Kind kind_ = Kind::discrete;
  std::vector<double> xs_;    // discrete atoms, or grid q-values
  std::vector<double> ws_;    // discrete probabilities
  std::vector<double> cums_;  // discrete cumulative probs, or grid p-values
  double a_ = 0.0, b_ = 0.0;  // closed-form parameters
  std::shared_ptr<const Distribution> lhs_, rhs_;  // quantile_sum children
  double mean_ = 0.0, var_ = 0.0;
};

// Comonotone addition: the law whose quantile is Q_x + Q_y.  Exact: when
// both quantiles are piecewise linear the result is a grid law on the merged
// knots; otherwise the sum is kept in closed form.
Distribution quantile_add(const Distribution& x, const Distribution& y);

enum class ConvexOrder { yes, no, inconclusive };

// Tri-state test of x <=_cx y: equal means (tolerance 1e-9) and dominance of
// integrated upper quantiles on an interior grid with margin 1e-10.
ConvexOrder convex_order_leq(const Distribution& x, const Distribution& y,
                             int grid = 129);

// L2(0,1) distance between the two quantile functions.
double quantile_l2_distance(const Distribution& x, const Distribution& y);

}  // namespace choquet
