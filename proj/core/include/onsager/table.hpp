#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace onsager {

using Cell = std::variant<double, std::int64_t, std::string>;

/// Column-oriented series for CSV export. Rows must match the header width.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Shortest round-trip decimal form of a double ("inf", "-inf", "nan" for
/// non-finite values).
std::string format_double(double value);

/// RFC 4180 style: comma separated, CRLF-free, fields quoted only when needed.
void write_csv(const Table& table, std::ostream& out);

/// Throws InvalidArgument on an empty table and std::runtime_error on I/O failure.
void export_csv(const Table& table, const std::filesystem::path& path);

}  // namespace onsager
