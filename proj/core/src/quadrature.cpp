// SPDX-License-Identifier: Apache-2.0
#include "choquet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace choquet::quad {

namespace {

Rule build_rule(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev estimate of the i-th root, then Newton on P_n.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 128; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < 1e-16) break;
    }
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.weights[n - 1 - i] = r.weights[i];
  }
  return r;
}

double apply(const Rule& r, const std::function<double(double)>& f, double a,
             double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i)
    s += r.weights[i] * f(c + h * r.nodes[i]);
  return s * h;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static std::map<int, Rule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double fixed(const std::function<double(double)>& f, double a, double b,
             int n) {
  return apply(gauss_legendre(n), f, a, b);
}

Result adaptive(const std::function<double(double)>& f, double a, double b,
                double tol, const std::vector<double>& knots, int max_depth) {
  if (!(b > a)) return {0.0, 0.0};
  const Rule& lo = gauss_legendre(16);
  const Rule& hi = gauss_legendre(32);

  struct Panel {
    double a, b;
    int depth;
  };
  std::vector<Panel> stack;
  std::vector<double> edges;
  edges.push_back(a);
  for (double k : knots)
    if (k > a && k < b) edges.push_back(k);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = edges.size() - 1; i > 0; --i)
    if (edges[i] > edges[i - 1]) stack.push_back({edges[i - 1], edges[i], 0});

  Result out;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double coarse = apply(lo, f, p.a, p.b);
    const double fine = apply(hi, f, p.a, p.b);
    const double err = std::abs(fine - coarse);
    if (err <= tol || p.depth >= max_depth) {
      out.value += fine;
      out.abs_error += err;
    } else {
      const double m = 0.5 * (p.a + p.b);
      stack.push_back({p.a, m, p.depth + 1});
      stack.push_back({m, p.b, p.depth + 1});
    }
  }
  return out;
}

Result unit_interval(const UnitIntegrand& f, bool singular_at_zero,
                     bool singular_at_one, double tol,
                     const std::vector<double>& knots) {
  // Core edges: keep every knot inside the directly integrated region.
  double kmin = 1.0, kmax = 0.0;
  for (double k : knots) {
    if (k > 0.0 && k < 1.0) {
      kmin = std::min(kmin, k);
      kmax = std::max(kmax, k);
    }
  }
  const double left_del = singular_at_zero ? std::min(1e-3, 0.5 * kmin) : 0.0;
  const double right_del =
      singular_at_one ? std::min(1e-3, 0.5 * (1.0 - kmax)) : 0.0;

  Result out =
      adaptive(f.from_zero, left_del, 1.0 - right_del, tol, knots);
  // p = exp(-t): the integral over (0, d) becomes one over (log 1/d, inf),
  // truncated where exp(-t) underflows any polylogarithmic growth of f.
  if (singular_at_zero) {
    const double t0 = -std::log(left_del);
    auto g = [&f](double t) {
      return f.from_zero(std::exp(-t)) * std::exp(-t);
    };
    Result tail = adaptive(g, t0, t0 + 80.0, tol);
    out.value += tail.value;
    out.abs_error += tail.abs_error;
  }
  if (singular_at_one) {
    const double t0 = -std::log(right_del);
    auto g = [&f](double t) {
      return f.from_one(std::exp(-t)) * std::exp(-t);
    };
    Result tail = adaptive(g, t0, t0 + 80.0, tol);
    out.value += tail.value;
    out.abs_error += tail.abs_error;
  }
  return out;
}

Result unit_interval(const std::function<double(double)>& f,
                     bool singular_at_zero, bool singular_at_one, double tol,
                     const std::vector<double>& knots) {
  UnitIntegrand g;
  g.from_zero = f;
  g.from_one = [&f](double s) { return f(1.0 - s); };
  return unit_interval(g, singular_at_zero, singular_at_one, tol, knots);
}

double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace choquet::quad
