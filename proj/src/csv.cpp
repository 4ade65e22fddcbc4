#include "qdarwin/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace qdarwin {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("row width does not match header");
  rows.push_back(std::move(row));
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // also folds -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

void write_csv(std::ostream& out, const Table& table) {
  out << "# schema=" << kCsvSchema << '\n';
  for (const auto& c : table.comments) out << "# " << c << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << quote(table.columns[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out << format_double(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
              out << quote(v);
            } else {
              out << std::to_string(v);
            }
          },
          row[c]);
    }
    out << '\n';
  }
}

void write_csv(const std::string& path, const Table& table) {
  if (path.empty() || path == "-") {
    write_csv(std::cout, table);
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(file, table);
  if (!file) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace qdarwin
