// SPDX-License-Identifier: Apache-2.0
#include "choquet/csv.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace choquet::csv {

namespace {

// Geometric ladder of tail masses 1e-14 .. 1e-2, four points per decade.
std::vector<double> tail_masses() {
  std::vector<double> eps;
  for (int k = 0; k <= 48; ++k) eps.push_back(1e-14 * std::pow(10.0, 0.25 * k));
  eps.back() = 1e-2;
  return eps;
}

// Bisects until the chord matches the quantile at the mid and quarter
// points; emits the right endpoint of each accepted cell.  A uniform
// midpoint tolerance tol bounds the table's L2(0,1) error by about tol.
void refine_cell(const Distribution& pi, double p0, double q0, double p1,
                 double q1, double tol, int depth,
                 std::vector<std::pair<double, double>>& out) {
  const double pm = 0.5 * (p0 + p1);
  if (depth > 0 && pm > p0 && pm < p1) {
    const double qm = pi.left_quantile(pm);
    const auto chord = [&](double p) {
      return q0 + (p - p0) / (p1 - p0) * (q1 - q0);
    };
    // A cell of width w adds about d^2 w to the squared L2 error, so narrow
    // tail cells can run at a looser pointwise tolerance.
    const double cell_tol =
        tol * std::pow(std::max(p1 - p0, 1e-12), -0.25);
    bool ok = std::abs(qm - chord(pm)) <= cell_tol;
    if (ok) {
      const double pq = 0.5 * (p0 + pm);
      if (pq > p0 && pq < pm)
        ok = std::abs(pi.left_quantile(pq) - chord(pq)) <= cell_tol;
    }
    if (!ok) {
      refine_cell(pi, p0, q0, pm, qm, tol, depth - 1, out);
      refine_cell(pi, pm, qm, p1, q1, tol, depth - 1, out);
      return;
    }
  }
  out.emplace_back(p1, q1);
}

}  // namespace

std::vector<std::pair<double, double>> quantile_table(const Distribution& pi) {
  std::vector<std::pair<double, double>> rows;
  if (pi.piecewise_linear_quantile()) {
    rows.emplace_back(0.0, pi.right_quantile(0.0));
    for (double p : pi.quantile_knots()) {
      if (p <= 0.0 || p >= 1.0) continue;
      const double lq = pi.left_quantile(p);
      const double rq = pi.right_quantile(p);
      rows.emplace_back(p, lq);
      if (rq > lq) rows.emplace_back(p, rq);
    }
    rows.emplace_back(1.0, pi.left_quantile(1.0));
    return rows;
  }

  // Seed nodes, then refine each cell until the piecewise-linear table
  // tracks the quantile tightly enough for 1e-6-grade L2 recovery.
  std::vector<std::pair<double, double>> seeds;
  const auto eps = tail_masses();
  if (pi.bounded_below()) {
    seeds.emplace_back(0.0, pi.right_quantile(0.0));
  } else {
    for (double e : eps) seeds.emplace_back(e, pi.left_quantile(e));
  }
  for (int i = 1; i < 99; ++i) {
    const double p = i / 100.0;
    if (!seeds.empty() && p <= seeds.back().first + 1e-15) continue;
    seeds.emplace_back(p, pi.left_quantile(p));
  }
  if (pi.bounded_above()) {
    seeds.emplace_back(1.0, pi.left_quantile(1.0));
  } else {
    for (std::size_t i = eps.size(); i-- > 0;)
      seeds.emplace_back(1.0 - eps[i], pi.upper_quantile(eps[i]));
  }

  const double tol = 3e-8 * (1.0 + pi.std_dev());
  rows.push_back(seeds.front());
  for (std::size_t i = 1; i < seeds.size(); ++i)
    refine_cell(pi, seeds[i - 1].first, seeds[i - 1].second, seeds[i].first,
                seeds[i].second, tol, 24, rows);
  return rows;
}

void write_quantile_table(std::ostream& os, const Distribution& pi) {
  write_pairs(os, "p,q", quantile_table(pi));
}

Distribution read_quantile_table(std::istream& is) {
  std::vector<double> ps, qs;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double p = 0.0, q = 0.0;
    if (!(row >> p >> q)) {
      if (ps.empty()) continue;  // header line
      throw std::invalid_argument("malformed quantile table row: " + line);
    }
    ps.push_back(p);
    qs.push_back(q);
  }
  if (ps.size() < 2)
    throw std::invalid_argument("quantile table needs at least two rows");
  // truncated tails of unbounded laws need not start at exactly 0 or 1
  if (ps.front() > 0.0) {
    ps.insert(ps.begin(), 0.0);
    qs.insert(qs.begin(), qs.front());
  }
  if (ps.back() < 1.0) {
    ps.push_back(1.0);
    qs.push_back(qs.back());
  }
  return Distribution::grid_quantile(std::move(ps), std::move(qs));
}

void write_pairs(std::ostream& os, const std::string& header,
                 const std::vector<std::pair<double, double>>& rows) {
  const auto saved = os.precision(17);
  os << header << '\n';
  for (const auto& [a, b] : rows) os << a << ',' << b << '\n';
  os.precision(saved);
}

}  // namespace choquet::csv
