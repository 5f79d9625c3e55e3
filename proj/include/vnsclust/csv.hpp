#pragma once

#include <string>

#include "vnsclust/core.hpp"

namespace vnsclust {

struct CsvOptions {
  bool skip_header = false;
  char delimiter = ',';
};

// Reads a purely numeric CSV into a DataMatrix. Ragged rows, non-numeric
// cells and empty files raise DataError naming the row and column.
DataMatrix load_csv(const std::string& path, const CsvOptions& options = {});

// Writes the matrix with enough precision that load_csv recovers the exact
// same values.
void save_csv(const DataMatrix& data, const std::string& path, char delimiter = ',');

}  // namespace vnsclust
