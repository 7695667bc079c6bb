// SPDX-License-Identifier: Apache-2.0
#include "choquet/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "choquet/normal.hpp"

namespace choquet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool Distortion::piecewise_kind() const {
  switch (kind_) {
    case Kind::eps_greedy:
    case Kind::discrete_uniform:
    case Kind::inter_es:
    case Kind::wasserstein_sym:
    case Kind::wasserstein_asym:
    case Kind::piecewise_linear:
      return true;
    default:
      return false;
  }
}

Distortion Distortion::from_vertices(Kind kind, double a, int n,
                                     std::vector<double> ps,
                                     std::vector<double> hs, double norm_sq) {
  Distortion d;
  d.kind_ = kind;
  d.a_ = a;
  d.n_ = n;
  d.ps_ = std::move(ps);
  d.hs_ = std::move(hs);
  d.norm_sq_ = norm_sq;
  return d;
}

// ===== catalog constructors ==============================================

Distortion Distortion::eps_greedy(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("eps-greedy distortion needs eps in (0, 1)");
  return from_vertices(Kind::eps_greedy, eps, 0, {0.0, eps, 1.0},
                       {0.0, eps * (1.0 - eps), 0.0}, eps * (1.0 - eps));
}

Distortion Distortion::discrete_uniform(double eps, int n) {
  if (!(eps > 0.0 && eps < 1.0) || n < 1)
    throw std::invalid_argument(
        "discrete-uniform distortion needs eps in (0, 1) and n >= 1");
  const double w = eps / (2.0 * n);
  const double peak = eps * (n + 1) / 4.0;
  std::vector<double> ps{0.0}, hs{0.0};
  double h = 0.0;
  for (int j = 1; j <= n; ++j) {
    h += (n + 1 - j) * w;
    ps.push_back(j * w);
    hs.push_back(h);
  }
  hs.back() = peak;  // exact by construction
  ps.push_back(1.0 - 0.5 * eps);
  hs.push_back(peak);
  h = peak;
  for (int j = 1; j <= n; ++j) {
    h -= j * w;
    ps.push_back(1.0 - 0.5 * eps + j * w);
    hs.push_back(h);
  }
  ps.back() = 1.0;
  hs.back() = 0.0;
  return from_vertices(Kind::discrete_uniform, eps, n, std::move(ps),
                       std::move(hs), eps * (n + 1) * (2 * n + 1) / 6.0);
}

Distortion Distortion::cre() {
  Distortion d;
  d.kind_ = Kind::cre;
  d.norm_sq_ = 1.0;
  return d;
}

Distortion Distortion::gaussian_score() {
  Distortion d;
  d.kind_ = Kind::gaussian_score;
  d.norm_sq_ = 1.0;
  return d;
}

Distortion Distortion::inter_es(double alpha) {
  if (!(alpha >= 0.5 && alpha < 1.0))
    throw std::invalid_argument("inter-es distortion needs alpha in [1/2, 1)");
  std::vector<double> ps{0.0, 1.0 - alpha}, hs{0.0, 1.0};
  if (alpha > 0.5) {
    ps.push_back(alpha);
    hs.push_back(1.0);
  }
  ps.push_back(1.0);
  hs.push_back(0.0);
  return from_vertices(Kind::inter_es, alpha, 0, std::move(ps), std::move(hs),
                       2.0 / (1.0 - alpha));
}

Distortion Distortion::wasserstein_sym() {
  return from_vertices(Kind::wasserstein_sym, 0.0, 0, {0.0, 0.5, 1.0},
                       {0.0, 0.5, 0.0}, 1.0);
}

Distortion Distortion::wasserstein_asym(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument(
        "asymmetric Wasserstein distortion needs alpha in (0, 1)");
  return from_vertices(Kind::wasserstein_asym, alpha, 0,
                       {0.0, 1.0 - alpha, 1.0},
                       {0.0, alpha * (1.0 - alpha), 0.0},
                       alpha * (1.0 - alpha));
}

Distortion Distortion::gini() {
  Distortion d;
  d.kind_ = Kind::gini;
  d.norm_sq_ = 1.0 / 3.0;
  return d;
}

Distortion Distortion::piecewise_linear(std::vector<double> ps,
                                        std::vector<double> hs) {
  if (ps.size() != hs.size() || ps.size() < 2)
    throw std::invalid_argument("piecewise distortion needs at least two vertices");
  if (std::abs(ps.front()) > 1e-12 || std::abs(ps.back() - 1.0) > 1e-12)
    throw std::invalid_argument("piecewise distortion must span p in [0, 1]");
  ps.front() = 0.0;
  ps.back() = 1.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!std::isfinite(ps[i]) || !std::isfinite(hs[i]))
      throw std::invalid_argument("piecewise distortion vertices must be finite");
    if (i > 0 && ps[i] < ps[i - 1] - 1e-12)
      throw std::invalid_argument("piecewise distortion p-values must be sorted");
    if (i > 0) ps[i] = std::max(ps[i], ps[i - 1]);
  }
  double norm_sq = 0.0;
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    const double w = ps[i + 1] - ps[i];
    if (w > 0.0) {
      const double slope = (hs[i + 1] - hs[i]) / w;
      norm_sq += slope * slope * w;
    } else if (hs[i + 1] != hs[i]) {
      norm_sq = kInf;  // jump in h: h' carries a point mass
    }
  }
  return from_vertices(Kind::piecewise_linear, 0.0, 0, std::move(ps),
                       std::move(hs), norm_sq);
}

Distortion Distortion::from_distribution(const Distribution& source,
                                         double mean) {
  const double m0 = source.mean();
  const double tol =
      1e-8 * std::max({1.0, std::abs(mean), source.std_dev()});
  if (std::abs(mean - m0) > tol)
    throw std::invalid_argument(
        "supplied mean is not the mean of the source quantile");
  Distortion d;
  d.kind_ = Kind::from_quantile;
  d.src_ = std::make_shared<const Distribution>(source);
  d.src_mean_ = m0;
  d.norm_sq_ = source.variance();
  return d;
}

const Distribution& Distortion::source() const {
  if (!src_) throw std::logic_error("distortion has no source distribution");
  return *src_;
}

std::string Distortion::kind_name() const {
  switch (kind_) {
    case Kind::eps_greedy: return "eps-greedy";
    case Kind::discrete_uniform: return "discrete-uniform";
    case Kind::cre: return "cre";
    case Kind::gaussian_score: return "gaussian-score";
    case Kind::inter_es: return "inter-es";
    case Kind::wasserstein_sym: return "wasserstein-sym";
    case Kind::wasserstein_asym: return "wasserstein-asym";
    case Kind::gini: return "gini";
    case Kind::piecewise_linear: return "piecewise";
    case Kind::from_quantile: return "from-quantile";
  }
  return "unknown";
}

// ===== evaluation ========================================================

double Distortion::h_raw(double p) const {
  switch (kind_) {
    case Kind::cre:
      return p <= 0.0 ? 0.0 : -p * std::log(p);
    case Kind::gaussian_score:
      return normal_pdf(normal_quantile(p));
    case Kind::gini:
      return p * (1.0 - p);
    case Kind::from_quantile:
      return src_->integral_quantile(1.0 - p, 1.0) - src_mean_ * p;
    default: {
      if (p <= 0.0) return hs_.front();
      if (p >= 1.0) return hs_.back();
      const auto it = std::upper_bound(ps_.begin(), ps_.end(), p);
      const std::size_t i = static_cast<std::size_t>(it - ps_.begin());
      if (ps_[i - 1] == p) return hs_[i - 1];
      const double t = (p - ps_[i - 1]) / (ps_[i] - ps_[i - 1]);
      return hs_[i - 1] + t * (hs_[i] - hs_[i - 1]);
    }
  }
}

double Distortion::hprime_raw(double p) const {
  switch (kind_) {
    case Kind::cre:
      return p <= 0.0 ? kInf : -std::log(p) - 1.0;
    case Kind::gaussian_score:
      return -normal_quantile(p);  // z(1 - p) by symmetry, tail-accurate
    case Kind::gini:
      return 1.0 - 2.0 * p;
    case Kind::from_quantile:
      return src_->upper_quantile(p) - src_mean_;
    default: {
      const auto it = std::upper_bound(ps_.begin(), ps_.end(), p);
      const std::size_t i = static_cast<std::size_t>(it - ps_.begin());
      // vertex i-1 is the last with ps <= p, so the segment to i is the
      // piece lying to the right of p
      const std::size_t j = i == 0 ? 0 : i - 1;
      return (hs_[i] - hs_[j]) / (ps_[i] - ps_[j]);
    }
  }
}

double Distortion::h(double p) const {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("distortion argument must lie in [0, 1]");
  return scale_ * h_raw(p);
}

double Distortion::h_prime(double p) const {
  if (!(p >= 0.0 && p < 1.0))
    throw std::domain_error("distortion derivative argument must lie in [0, 1)");
  return scale_ * hprime_raw(p);
}

double Distortion::h_prime_from_one(double s) const {
  if (!(s > 0.0 && s <= 1.0))
    throw std::domain_error("distance to 1 must lie in (0, 1]");
  switch (kind_) {
    case Kind::cre:
      return scale_ * (-std::log1p(-s) - 1.0);
    case Kind::gaussian_score:
      return scale_ * normal_quantile(s);
    case Kind::gini:
      return scale_ * (2.0 * s - 1.0);
    case Kind::from_quantile:
      return scale_ * (src_->left_quantile(s) - src_mean_);
    default: {
      const double p = 1.0 - s;
      if (p >= 1.0) {
        // final positive-width piece: its slope is the left limit at 1
        std::size_t i = ps_.size() - 1;
        while (i > 0 && ps_[i - 1] >= 1.0) --i;
        return scale_ * (hs_[i] - hs_[i - 1]) / (1.0 - ps_[i - 1]);
      }
      return scale_ * hprime_raw(p);
    }
  }
}

double Distortion::l2_norm_sq() const { return scale_ * scale_ * norm_sq_; }

double Distortion::l2_norm() const { return std::sqrt(l2_norm_sq()); }

double Distortion::sup_h() const {
  switch (kind_) {
    case Kind::cre:
      return scale_ * std::exp(-1.0);
    case Kind::gaussian_score:
      return scale_ * normal_pdf(0.0);
    case Kind::gini:
      return scale_ * 0.25;
    case Kind::from_quantile: {
      // sup h = E[(X - m)^+], attained where Q(1 - p) crosses the mean
      const double pm = src_->cdf(src_mean_);
      return scale_ * (src_->integral_quantile(pm, 1.0) -
                       src_mean_ * (1.0 - pm));
    }
    default:
      return scale_ * *std::max_element(hs_.begin(), hs_.end());
  }
}

Distortion Distortion::scaled(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("distortion scale must be positive and finite");
  Distortion d(*this);
  d.scale_ = scale_ * lambda;
  return d;
}

// ===== structure queries =================================================

bool Distortion::piecewise_linear_h() const {
  if (piecewise_kind()) return true;
  if (kind_ == Kind::from_quantile) {
    switch (src_->kind()) {
      case Distribution::Kind::discrete:
      case Distribution::Kind::two_point:
      case Distribution::Kind::three_point:
        return true;
      default:
        return false;
    }
  }
  return false;
}

Distortion::StepFunction Distortion::h_prime_steps() const {
  StepFunction s;
  if (piecewise_kind()) {
    s.edges.push_back(0.0);
    for (std::size_t i = 0; i + 1 < ps_.size(); ++i) {
      const double w = ps_[i + 1] - ps_[i];
      if (w <= 0.0) continue;  // jumps are reported via jump_ps
      s.values.push_back(scale_ * (hs_[i + 1] - hs_[i]) / w);
      s.edges.push_back(ps_[i + 1]);
    }
    return s;
  }
  if (kind_ == Kind::from_quantile && piecewise_linear_h()) {
    const auto& xs = src_->discrete_atoms();
    const auto& cums = src_->discrete_cums();
    const std::size_t k = xs.size();
    s.edges.push_back(0.0);
    for (std::size_t i = 0; i < k; ++i) {
      // h'(p) = x_{k-i} - m on [1 - c_{k-i}, 1 - c_{k-i-1})
      const std::size_t j = k - 1 - i;
      s.values.push_back(scale_ * (xs[j] - src_mean_));
      s.edges.push_back(j == 0 ? 1.0 : 1.0 - cums[j - 1]);
    }
    return s;
  }
  throw std::logic_error("derivative of this distortion is not a step function");
}

std::vector<double> Distortion::jump_ps() const {
  std::vector<double> out;
  if (!piecewise_kind()) return out;
  for (std::size_t i = 0; i + 1 < ps_.size(); ++i)
    if (ps_[i + 1] == ps_[i] && hs_[i + 1] != hs_[i]) out.push_back(ps_[i]);
  return out;
}

std::vector<double> Distortion::jump_sizes() const {
  std::vector<double> out;
  if (!piecewise_kind()) return out;
  for (std::size_t i = 0; i + 1 < ps_.size(); ++i)
    if (ps_[i + 1] == ps_[i] && hs_[i + 1] != hs_[i])
      out.push_back(scale_ * (hs_[i + 1] - hs_[i]));
  return out;
}

std::vector<double> Distortion::knots() const {
  std::vector<double> out;
  if (piecewise_kind()) {
    for (std::size_t i = 1; i + 1 < ps_.size(); ++i)
      if (ps_[i] > 0.0 && ps_[i] < 1.0 && (out.empty() || ps_[i] > out.back()))
        out.push_back(ps_[i]);
    return out;
  }
  if (kind_ == Kind::from_quantile) {
    for (double k : src_->quantile_knots()) {
      const double p = 1.0 - k;
      if (p > 0.0 && p < 1.0) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

bool Distortion::hprime_unbounded_at_zero() const {
  switch (kind_) {
    case Kind::cre:
    case Kind::gaussian_score:
      return true;
    case Kind::from_quantile:
      return !src_->bounded_above();
    default:
      return false;
  }
}

bool Distortion::hprime_unbounded_at_one() const {
  switch (kind_) {
    case Kind::gaussian_score:
      return true;
    case Kind::from_quantile:
      return !src_->bounded_below();
    default:
      return false;
  }
}

// ===== validation ========================================================

Distortion::ValidationReport Distortion::validate(int grid_size) const {
  if (grid_size < 3)
    throw std::invalid_argument("validation grid needs at least 3 points");
  ValidationReport r;
  const double tol = 1e-12 * std::max(1.0, scale_);
  r.boundary_ok = std::abs(h(0.0)) <= tol && std::abs(h(1.0)) <= tol;

  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(grid_size) + ps_.size());
  for (int i = 0; i < grid_size; ++i)
    pts.push_back(static_cast<double>(i) / (grid_size - 1));
  for (double p : knots()) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  r.nonneg_ok = true;
  for (double p : pts)
    if (h(p) < -tol) r.nonneg_ok = false;

  r.concave_ok = jump_ps().empty();  // an interior jump in h breaks concavity
  const double slope_tol = 1e-10 * std::max(1.0, scale_);
  double prev = kInf;
  for (double p : pts) {
    if (p >= 1.0) break;
    const double d = h_prime(p);
    if (d > prev + slope_tol) r.concave_ok = false;
    prev = d;
  }
  return r;
}

Distortion Distortion::concave_envelope() const {
  if (!piecewise_kind())
    throw std::invalid_argument(
        "concave envelope is defined for piecewise distortions only");
  struct Pt {
    double p, h;
  };
  std::vector<Pt> pts;
  pts.reserve(ps_.size());
  for (std::size_t i = 0; i < ps_.size(); ++i) pts.push_back({ps_[i], hs_[i]});
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
    return a.p < b.p || (a.p == b.p && a.h < b.h);
  });
  // upper hull by monotone chain; collinear middle points are dropped
  std::vector<Pt> hull;
  auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
    return (a.p - o.p) * (b.h - o.h) - (a.h - o.h) * (b.p - o.p);
  };
  for (const Pt& pt : pts) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), pt) >= 0.0)
      hull.pop_back();
    hull.push_back(pt);
  }
  bool unchanged = true;
  for (const Pt& pt : pts) {
    // point on the hull within tolerance?
    double val = -kInf;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
      if (pt.p < hull[i].p || pt.p > hull[i + 1].p) continue;
      const double w = hull[i + 1].p - hull[i].p;
      const double t = w > 0.0 ? (pt.p - hull[i].p) / w : 0.0;
      val = std::max(val, hull[i].h + t * (hull[i + 1].h - hull[i].h));
    }
    if (std::abs(val - pt.h) > 1e-13 * std::max(1.0, std::abs(val)))
      unchanged = false;
  }
  if (unchanged) return *this;
  std::vector<double> ps, hs;
  for (const Pt& pt : hull) {
    ps.push_back(pt.p);
    hs.push_back(pt.h);
  }
  Distortion out = piecewise_linear(std::move(ps), std::move(hs));
  out.scale_ = scale_;
  return out;
}

}  // namespace choquet
