#include "tradeoff/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace tradeoff::csv {

std::string format(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

void write_gnuplot_grid(std::ostream& os, const std::vector<std::vector<double>>& rows,
                        std::size_t row_length) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (row_length > 0 && i > 0 && i % row_length == 0) os << '\n';
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      if (k) os << ' ';
      os << format(rows[i][k]);
    }
    os << '\n';
  }
}

}  // namespace tradeoff::csv
