#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tradeoff::csv {

// Shortest round-trip decimal form; identical input gives identical text.
std::string format(double value);

void write_row(std::ostream& os, const std::vector<std::string>& cells);

// Grid for gnuplot `splot`: one "x y z..." line per point, blank line
// between scanlines of `row_length` points.
void write_gnuplot_grid(std::ostream& os, const std::vector<std::vector<double>>& rows,
                        std::size_t row_length);

}  // namespace tradeoff::csv
