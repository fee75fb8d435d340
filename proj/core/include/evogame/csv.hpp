#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace evogame {

/// Header-plus-rows view of a simple comma-separated file (no quoting; the
/// harness never emits commas inside fields).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws std::out_of_range when the column is missing.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

/// Throws std::runtime_error on ragged rows.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

}  // namespace evogame
