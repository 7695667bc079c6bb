// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <sstream>
#include <vector>

#include "choquet/csv.hpp"
#include "choquet/distribution.hpp"
#include "doctest.h"
#include "oracle.hpp"

using choquet::Distribution;

namespace {

Distribution round_trip(const Distribution& pi) {
  std::stringstream ss;
  choquet::csv::write_quantile_table(ss, pi);
  return choquet::csv::read_quantile_table(ss);
}

}  // namespace

TEST_CASE("quantile tables round trip within the recovery tolerance") {
  const std::vector<Distribution> laws = {
      Distribution::uniform(-1.0, 3.0),
      Distribution::normal(0.5, 4.0),
      Distribution::shifted_exponential(1.0, 0.5),
      Distribution::discrete({0.0, 2.0}, {0.3, 0.7}),
      Distribution::discrete({-1.0, 0.5, 2.0}, {0.2, 0.5, 0.3})};
  for (const auto& pi : laws) {
    const auto back = round_trip(pi);
    const double dist = choquet::quantile_l2_distance(pi, back);
    INFO("kind ", static_cast<int>(pi.kind()));
    CHECK(dist < 1e-6);
    CHECK(back.mean() == doctest::Approx(pi.mean()).epsilon(1e-6));
    CHECK(back.variance() ==
          doctest::Approx(pi.variance()).epsilon(1e-4).scale(1.0));
  }
}

TEST_CASE("piecewise-linear laws round trip exactly") {
  const std::vector<Distribution> laws = {
      Distribution::uniform(-2.0, 7.0),
      Distribution::discrete({-3.0, 0.0, 1.5}, {0.25, 0.5, 0.25})};
  for (const auto& pi : laws) {
    const auto back = round_trip(pi);
    CHECK(choquet::quantile_l2_distance(pi, back) < 1e-12);
  }
}

TEST_CASE("table shape: probabilities ascend and span the unit interval") {
  for (const auto& pi : {Distribution::normal(0.0, 1.0),
                         Distribution::uniform(0.0, 1.0),
                         Distribution::discrete({0.0, 1.0}, {0.4, 0.6})}) {
    const auto rows = choquet::csv::quantile_table(pi);
    REQUIRE(rows.size() >= 2);
    CHECK(rows.front().first >= 0.0);
    CHECK(rows.back().first <= 1.0);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].first >= rows[i - 1].first);
      CHECK(rows[i].second >= rows[i - 1].second - 1e-12);
    }
  }
}

TEST_CASE("reader accepts a missing header and rejects malformed rows") {
  {
    std::stringstream ss("0,1\n0.5,2\n1,3\n");
    const auto pi = choquet::csv::read_quantile_table(ss);
    CHECK(pi.mean() == doctest::Approx(2.0).epsilon(1e-12));
  }
  {
    std::stringstream ss("p,q\n0,1\n0.5,2\n1,3\n");
    const auto pi = choquet::csv::read_quantile_table(ss);
    CHECK(pi.mean() == doctest::Approx(2.0).epsilon(1e-12));
  }
  {
    std::stringstream ss("0,1\nnot,a,row\n");
    CHECK_THROWS_AS(choquet::csv::read_quantile_table(ss),
                    std::invalid_argument);
  }
  {
    std::stringstream ss("0.5,2\n0.25,1\n1,3\n");  // p not sorted
    CHECK_THROWS_AS(choquet::csv::read_quantile_table(ss),
                    std::invalid_argument);
  }
  {
    std::stringstream ss("0,3\n1,1\n");  // q decreasing
    CHECK_THROWS_AS(choquet::csv::read_quantile_table(ss),
                    std::invalid_argument);
  }
}

TEST_CASE("duplicate p rows encode quantile jumps") {
  std::stringstream ss("0,0\n0.4,0\n0.4,1\n1,1\n");
  const auto pi = choquet::csv::read_quantile_table(ss);
  // Q jumps from 0 to 1 at p = 0.4: mixture of two flat runs -> two atoms.
  CHECK(pi.mean() == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(pi.left_quantile(0.2) == doctest::Approx(0.0));
  CHECK(pi.left_quantile(0.8) == doctest::Approx(1.0));
}

TEST_CASE("truncated tails extend without destroying moments") {
  // A table clipped at p in [1e-4, 1-1e-4] still recovers the normal well.
  const auto pi = Distribution::normal(0.0, 1.0);
  std::vector<std::pair<double, double>> rows;
  const int n = 4001;
  for (int i = 0; i < n; ++i) {
    const double p = 1e-4 + (1.0 - 2e-4) * i / (n - 1.0);
    rows.push_back({p, pi.left_quantile(p)});
  }
  std::stringstream ss;
  choquet::csv::write_pairs(ss, "p,q", rows);
  const auto back = choquet::csv::read_quantile_table(ss);
  CHECK(back.mean() == doctest::Approx(0.0).epsilon(1e-6).scale(1.0));
  CHECK(back.variance() == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(choquet::quantile_l2_distance(pi, back) < 5e-3);
}

TEST_CASE("write_pairs emits the requested header and full precision") {
  std::stringstream ss;
  choquet::csv::write_pairs(ss, "a,b", {{0.1, 1.0 / 3.0}, {0.9, 2.0}});
  std::string line;
  std::getline(ss, line);
  CHECK(line == "a,b");
  std::getline(ss, line);
  CHECK(line.find("0.1") == 0);
  CHECK(line.find("0.33333333333333") != std::string::npos);
}
