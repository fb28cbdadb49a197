#include "lqdg/textio.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace lqdg {

std::string format_number(double x) {
  if (x == 0.0) return "0";
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
  char buf[48];
  const double ax = std::abs(x);
  std::to_chars_result res{};
  if (ax < 1e-4 || ax >= 1e6) {
    res = std::to_chars(buf, buf + sizeof(buf), x,
                        std::chars_format::scientific, 11);
  } else {
    // In [1e-4, 1e6) the general format stays fixed-point at this precision.
    res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general,
                        12);
  }
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Dataset& dataset) {
  for (std::size_t c = 0; c < dataset.columns.size(); ++c) {
    if (c > 0) os << ',';
    os << dataset.columns[c];
  }
  os << '\n';
  for (const auto& row : dataset.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << ',';
      os << format_number(row[c]);
    }
    os << '\n';
  }
}

}  // namespace lqdg
