#pragma once

// Versioned CSV output. Every file starts with "# schema=1", then a header
// row; numbers are written with std::to_chars so the locale never matters.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace qdarwin {

inline constexpr int kCsvSchema = 1;

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::string> comments;  // "key=value" lines after the schema line
  std::vector<std::vector<Cell>> rows;

  /// Throws std::invalid_argument if the row width differs from the header.
  void add(std::vector<Cell> row);
};

/// Shortest round-trip representation; nan and inf are written as such.
std::string format_double(double x);

void write_csv(std::ostream& out, const Table& table);
/// Writes to a file, or to stdout when path is empty or "-".
void write_csv(const std::string& path, const Table& table);

}  // namespace qdarwin
