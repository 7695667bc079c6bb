// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "choquet/distribution.hpp"

namespace choquet::csv {

// (p, q) rows of the quantile function: exact vertices for piecewise-linear
// quantiles (duplicate p encodes a jump), geometric tail grids plus a uniform
// core for unbounded kinds.
std::vector<std::pair<double, double>> quantile_table(const Distribution& pi);

// Writes "p,q" rows with full precision.
void write_quantile_table(std::ostream& os, const Distribution& pi);

// Reads a "p,q" table (header optional) back into a grid-quantile law.
Distribution read_quantile_table(std::istream& is);

// Writes an arbitrary two-column table under the given header line.
void write_pairs(std::ostream& os, const std::string& header,
                 const std::vector<std::pair<double, double>>& rows);

}  // namespace choquet::csv
