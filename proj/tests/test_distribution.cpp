// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <limits>
#include <vector>

#include "choquet/distribution.hpp"
#include "choquet/rng.hpp"
#include "doctest.h"
#include "oracle.hpp"

using choquet::ConvexOrder;
using choquet::convex_order_leq;
using choquet::Distribution;
using choquet::quantile_add;
using choquet::quantile_l2_distance;
using choquet::RngStream;

TEST_CASE("closed-form moments") {
  CHECK(Distribution::uniform(-1.0, 3.0).mean() == doctest::Approx(1.0));
  CHECK(Distribution::uniform(-1.0, 3.0).variance() ==
        doctest::Approx(16.0 / 12.0));
  CHECK(Distribution::normal(2.0, 9.0).std_dev() == doctest::Approx(3.0));
  const auto e = Distribution::shifted_exponential(1.0, 2.0);
  CHECK(e.mean() == doctest::Approx(1.5));
  CHECK(e.variance() == doctest::Approx(0.25));
  const auto d = Distribution::discrete({-1.0, 0.0, 2.0}, {0.25, 0.25, 0.5});
  CHECK(d.mean() == doctest::Approx(0.75));
  CHECK(d.variance() == doctest::Approx(0.25 * 3.0625 + 0.25 * 0.5625 +
                                        0.5 * 1.5625));
}

TEST_CASE("discrete constructor normalizes and sorts") {
  const auto d = Distribution::discrete({2.0, -1.0}, {0.6, 0.4});
  CHECK(d.discrete_atoms()[0] == -1.0);
  CHECK(d.discrete_probs()[0] == doctest::Approx(0.4));
  CHECK(d.kind() == Distribution::Kind::two_point);
  CHECK_THROWS_AS(Distribution::discrete({0.0}, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::discrete({0.0, 1.0}, {0.7, 0.7}),
                  std::invalid_argument);
}

TEST_CASE("quantile conventions at atoms") {
  const auto d = Distribution::discrete({0.0, 1.0, 5.0}, {0.2, 0.5, 0.3});
  CHECK(d.left_quantile(0.2) == 0.0);   // inf{x : F(x) >= 0.2}
  CHECK(d.right_quantile(0.2) == 1.0);  // inf{x : F(x) > 0.2}
  CHECK(d.left_quantile(0.7) == 1.0);
  CHECK(d.right_quantile(0.7) == 5.0);
  CHECK(d.left_quantile(0.1) == 0.0);
  CHECK(d.left_quantile(1.0) == 5.0);
  CHECK(d.right_quantile(0.0) == 0.0);
  CHECK(d.cdf(1.0) == doctest::Approx(0.7));
  CHECK(d.cdf(0.99) == doctest::Approx(0.2));
  CHECK(d.survival(1.0) == doctest::Approx(0.8));  // P(X >= 1)
  CHECK(d.survival(1.01) == doctest::Approx(0.3));
}

TEST_CASE("uniform and normal quantiles invert their cdf") {
  const auto u = Distribution::uniform(-2.0, 2.0);
  const auto n = Distribution::normal(1.0, 4.0);
  for (double p : {0.01, 0.2, 0.5, 0.77, 0.99}) {
    CHECK(u.cdf(u.left_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    CHECK(n.cdf(n.left_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK(n.left_quantile(0.975) ==
        doctest::Approx(1.0 + 2.0 * oracle::kZ975).epsilon(1e-13));
}

TEST_CASE("upper_quantile keeps tail precision") {
  const auto e = Distribution::shifted_exponential(0.0, 1.0);
  // Q(1 - eps) = -log(eps): exact comparison deep in the tail.
  CHECK(e.upper_quantile(1e-14) == doctest::Approx(-std::log(1e-14)));
  const auto n = Distribution::normal(0.0, 1.0);
  // survival(upper_quantile(eps)) == eps via the erfc oracle.
  const double uq = n.upper_quantile(1e-9);
  const double surv = 0.5 * std::erfc(uq / std::sqrt(2.0));
  CHECK(surv == doctest::Approx(1e-9).epsilon(1e-10));
  CHECK(uq == doctest::Approx(-oracle::kZ1em9).epsilon(1e-13));
}

TEST_CASE("integral_quantile matches simpson on the quantile") {
  const auto cases = std::vector<Distribution>{
      Distribution::uniform(-1.0, 2.0),
      Distribution::normal(0.5, 2.0),
      Distribution::shifted_exponential(-1.0, 1.5),
      Distribution::discrete({-2.0, 0.0, 1.0, 4.0}, {0.1, 0.4, 0.3, 0.2}),
  };
  for (const auto& d : cases) {
    for (auto [a, b] : {std::pair{0.1, 0.9}, {0.25, 0.5}, {0.02, 0.37}}) {
      const double lib = d.integral_quantile(a, b);
      // Integrate the pointwise quantile between its jump levels so Simpson
      // never straddles a discontinuity.  Endpoints stay interior because
      // unbounded quantiles are singular at p = 0 and p = 1.
      std::vector<double> edges{a};
      for (double k : d.quantile_knots())
        if (k > a && k < b) edges.push_back(k);
      edges.push_back(b);
      double ora = 0.0;
      for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        ora += oracle::integrate(
            [&d](double p) { return d.left_quantile(p); }, edges[i],
            edges[i + 1], 1e-13);
      CHECK(lib == doctest::Approx(ora).epsilon(2e-9));
    }
  }
}

TEST_CASE("full-interval integral recovers the mean") {
  for (const auto& d : {Distribution::normal(0.3, 1.7),
                        Distribution::uniform(-4.0, -1.0),
                        Distribution::shifted_exponential(2.0, 0.5)}) {
    CHECK(d.integral_quantile(0.0, 1.0) == doctest::Approx(d.mean()));
  }
}

TEST_CASE("expected shortfall against frozen reference") {
  const auto n = Distribution::normal(0.0, 1.0);
  CHECK(n.es(0.975) == doctest::Approx(oracle::kES975).epsilon(1e-12));
  CHECK(n.tail_mean(0.025) == doctest::Approx(oracle::kES975).epsilon(1e-12));
  CHECK(n.es_lower(0.025) == doctest::Approx(-oracle::kES975).epsilon(1e-12));
  CHECK_THROWS_AS(n.es(1.0), std::domain_error);
  CHECK_THROWS_AS(n.es_lower(0.0), std::domain_error);
}

TEST_CASE("affine transforms") {
  const auto n = Distribution::normal(1.0, 4.0).affine(3.0, 0.5);
  CHECK(n.mean() == doctest::Approx(3.5));
  CHECK(n.variance() == doctest::Approx(1.0));
  const auto d =
      Distribution::discrete({0.0, 1.0}, {0.5, 0.5}).affine(-1.0, 2.0);
  CHECK(d.discrete_atoms()[0] == -1.0);
  CHECK(d.discrete_atoms()[1] == 1.0);
  CHECK_THROWS_AS(Distribution::uniform(0.0, 1.0).affine(0.0, -1.0),
                  std::invalid_argument);
}

TEST_CASE("grid quantile laws honor jump conventions") {
  // Quantile jumps at p = 0.5 from 1 to 3 (duplicated p-entry).
  const auto g = Distribution::grid_quantile({0.0, 0.5, 0.5, 1.0},
                                             {0.0, 1.0, 3.0, 4.0});
  CHECK(g.left_quantile(0.5) == doctest::Approx(1.0));
  CHECK(g.right_quantile(0.5) == doctest::Approx(3.0));
  CHECK(g.left_quantile(0.25) == doctest::Approx(0.5));
  CHECK(g.cdf(2.0) == doctest::Approx(0.5));   // inside the jump
  CHECK(g.survival(2.0) == doctest::Approx(0.5));
  CHECK(g.piecewise_linear_quantile());
  CHECK(g.atom_positions().empty());
  // Flat run = atom of mass 0.3 at x = 2.
  const auto a = Distribution::grid_quantile({0.0, 0.4, 0.7, 1.0},
                                             {0.0, 2.0, 2.0, 5.0});
  REQUIRE(a.atom_positions().size() == 1);
  CHECK(a.atom_positions()[0] == doctest::Approx(2.0));
  CHECK(a.atom_masses()[0] == doctest::Approx(0.3));
}

TEST_CASE("comonotone addition is exact for piecewise-linear quantiles") {
  // U(0,1) + 2 U(0,1) comonotonically = U(0,3).
  const auto u1 = Distribution::uniform(0.0, 1.0);
  const auto u2 = Distribution::uniform(0.0, 2.0);
  const auto s = quantile_add(u1, u2);
  CHECK(s.mean() == doctest::Approx(1.5));
  CHECK(s.variance() == doctest::Approx(9.0 / 12.0).epsilon(1e-12));
  CHECK(s.left_quantile(0.5) == doctest::Approx(1.5));
  CHECK(quantile_l2_distance(s, Distribution::uniform(0.0, 3.0)) < 1e-12);

  // Discrete + discrete: quantiles add level-by-level.
  const auto d1 = Distribution::discrete({0.0, 1.0}, {0.5, 0.5});
  const auto d2 = Distribution::discrete({0.0, 10.0}, {0.25, 0.75});
  const auto ds = quantile_add(d1, d2);
  // Q(p): p<=0.25 -> 0; 0.25<p<=0.5 -> 10; p>0.5 -> 11.
  CHECK(ds.left_quantile(0.2) == doctest::Approx(0.0));
  CHECK(ds.left_quantile(0.4) == doctest::Approx(10.0));
  CHECK(ds.left_quantile(0.9) == doctest::Approx(11.0));
  CHECK(ds.mean() == doctest::Approx(0.5 + 0.25 * 0.0 + 0.75 * 10.0));
}

TEST_CASE("comonotone addition of smooth laws tracks moments") {
  const auto a = Distribution::normal(1.0, 4.0);
  const auto b = Distribution::normal(-1.0, 9.0);
  const auto s = quantile_add(a, b);
  // Comonotone normals add their standard deviations.
  CHECK(s.mean() == doctest::Approx(0.0));
  CHECK(s.variance() == doctest::Approx(25.0).epsilon(1e-9));
  for (double p : {0.1, 0.5, 0.9})
    CHECK(s.left_quantile(p) ==
          doctest::Approx(a.left_quantile(p) + b.left_quantile(p))
              .epsilon(1e-12));
  // cdf is the functional inverse on the sum kind (bisection path).
  CHECK(s.cdf(s.left_quantile(0.3)) == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("convex order detects dilations and rejects mean shifts") {
  const auto x = Distribution::discrete({0.0, 2.0}, {0.5, 0.5});
  // Martingale split of the atom at 2 into {1, 3}: a mean-preserving spread.
  const auto y =
      Distribution::discrete({0.0, 1.0, 3.0}, {0.5, 0.25, 0.25});
  CHECK(convex_order_leq(x, y) == ConvexOrder::yes);
  CHECK(convex_order_leq(y, x) == ConvexOrder::no);
  const auto shifted = Distribution::discrete({1.0, 3.0}, {0.5, 0.5});
  CHECK(convex_order_leq(x, shifted) == ConvexOrder::no);
  // Less spread fails against more spread.
  CHECK(convex_order_leq(Distribution::normal(0.0, 1.0),
                         Distribution::normal(0.0, 0.25)) == ConvexOrder::no);
}

TEST_CASE("quantile l2 distance closed forms") {
  CHECK(quantile_l2_distance(Distribution::normal(0.0, 1.0),
                             Distribution::normal(1.0, 4.0)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(quantile_l2_distance(Distribution::uniform(0.0, 1.0),
                             Distribution::uniform(0.0, 1.0)) == 0.0);
  // Uniform(0,1) vs Uniform(1,2): constant gap 1.
  CHECK(quantile_l2_distance(Distribution::uniform(0.0, 1.0),
                             Distribution::uniform(1.0, 2.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // Mixed representations fall back to quadrature and stay consistent.
  const double mixed = quantile_l2_distance(Distribution::normal(0.0, 1.0),
                                            Distribution::uniform(-1.0, 1.0));
  const double brute = std::sqrt(oracle::integrate(
      [](double p) {
        const auto n = Distribution::normal(0.0, 1.0);
        const auto u = Distribution::uniform(-1.0, 1.0);
        const double d = n.left_quantile(p) - u.left_quantile(p);
        return d * d;
      },
      1e-9, 1.0 - 1e-9, 1e-12));
  CHECK(mixed == doctest::Approx(brute).epsilon(1e-6));
}

TEST_CASE("sampling is deterministic per seed and matches moments") {
  const auto d = Distribution::normal(1.0, 4.0);
  RngStream r1(2024), r2(2024), r3(7);
  const auto a = d.sample(r1, 20000);
  const auto b = d.sample(r2, 20000);
  CHECK(a == b);
  const auto c = d.sample(r3, 20000);
  CHECK(a != c);
  double m = 0.0;
  for (double v : a) m += v;
  m /= static_cast<double>(a.size());
  // 5 sigma / sqrt(n) band.
  CHECK(std::abs(m - 1.0) < 5.0 * 2.0 / std::sqrt(20000.0));
}

TEST_CASE("dirac is a point mass with zero variance") {
  const auto d = Distribution::dirac(3.0);
  CHECK(d.mean() == 3.0);
  CHECK(d.variance() == 0.0);
  CHECK(d.left_quantile(0.5) == 3.0);
  CHECK(d.cdf(3.0) == 1.0);
  CHECK(d.survival(3.0) == 1.0);
}

TEST_CASE("support reporting") {
  CHECK(Distribution::uniform(-1.0, 2.0).bounded_below());
  CHECK(Distribution::uniform(-1.0, 2.0).bounded_above());
  CHECK(!Distribution::normal(0.0, 1.0).bounded_below());
  const auto e = Distribution::shifted_exponential(1.0, 2.0);
  CHECK(e.bounded_below());
  CHECK(!e.bounded_above());
  CHECK(e.support_lo() == doctest::Approx(1.0));
}
