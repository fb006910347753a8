#include "wapeq/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wapeq/errors.hpp"

namespace wapeq {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::vector<double>> read_numeric_csv(const std::string& path,
                                                  std::size_t min_cols) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;

    std::string fields = line;
    for (char& c : fields)
      if (c == ',' || c == ';' || c == '\t') c = ' ';

    std::istringstream ss(fields);
    std::vector<double> row;
    std::string tok;
    bool numeric = true;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        row.push_back(v);
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first_content_line) {  // header row
        first_content_line = false;
        continue;
      }
      throw Error("non-numeric field in " + path + ": " + line);
    }
    first_content_line = false;
    if (row.empty()) continue;
    if (row.size() < min_cols)
      throw Error("row with fewer than " + std::to_string(min_cols) +
                  " columns in " + path);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wapeq
