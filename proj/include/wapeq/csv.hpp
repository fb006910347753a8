#pragma once

#include <string>
#include <vector>

namespace wapeq {

// "%.17g": enough digits to round-trip a double exactly.
std::string format_g17(double x);

// Numeric CSV reader: comma- or whitespace-separated columns, '#' comments
// and blank lines skipped, a leading non-numeric header row skipped. Every
// remaining row must have at least min_cols numeric fields.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path,
                                                  std::size_t min_cols);

}  // namespace wapeq
