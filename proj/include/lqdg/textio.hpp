#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lqdg {

/// Fixed numeric formatting used by every report and CSV: 12 significant
/// digits, scientific notation for |x| < 1e-4 or |x| >= 1e6. Identical
/// inputs produce byte-identical text.
std::string format_number(double x);

/// A rectangular numeric dataset with named columns.
struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Header row plus one line per data row, formatted with format_number.
void write_csv(std::ostream& os, const Dataset& dataset);

}  // namespace lqdg
