#include "vnsclust/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>

namespace vnsclust {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_cell(const std::string& cell, index_t row, index_t col, const std::string& path) {
  const std::string token = trim(cell);
  double out = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, out);
  if (token.empty() || res.ec != std::errc{} || res.ptr != end) {
    throw DataError(path + ": row " + std::to_string(row + 1) + ", column " +
                    std::to_string(col + 1) + ": not a number: '" + token + "'");
  }
  return out;
}

}  // namespace

DataMatrix load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open CSV file: " + path);

  std::vector<double> values;
  std::string line;
  index_t row = 0;
  index_t data_rows = 0;
  int cols = -1;
  bool skipped_header = !options.skip_header;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty()) {
      ++row;
      continue;
    }
    if (!skipped_header) {
      skipped_header = true;
      ++row;
      continue;
    }
    index_t col = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t sep = stripped.find(options.delimiter, start);
      const std::string cell =
          sep == std::string::npos ? stripped.substr(start) : stripped.substr(start, sep - start);
      values.push_back(parse_cell(cell, row, col, path));
      ++col;
      if (sep == std::string::npos) break;
      start = sep + 1;
    }
    if (cols < 0) {
      cols = static_cast<int>(col);
    } else if (col != cols) {
      throw DataError(path + ": row " + std::to_string(row + 1) + " has " + std::to_string(col) +
                      " columns, expected " + std::to_string(cols));
    }
    ++data_rows;
    ++row;
  }
  if (data_rows == 0) throw DataError(path + ": no data rows");
  return DataMatrix(data_rows, cols, std::move(values));
}

void save_csv(const DataMatrix& data, const std::string& path, char delimiter) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  char buf[64];
  for (index_t i = 0; i < data.rows(); ++i) {
    const auto row = data.row(i);
    for (int d = 0; d < data.cols(); ++d) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[static_cast<std::size_t>(d)]);
      if (d > 0) out << delimiter;
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace vnsclust
