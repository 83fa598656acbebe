#include "onsager/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "onsager/error.hpp"

namespace onsager {

void Table::add_row(std::vector<Cell> row) {
  require(row.size() == header.size(), "table row width does not match header");
  rows.push_back(std::move(row));
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, end);
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render(const Cell& cell) {
  if (auto d = std::get_if<double>(&cell)) return format_double(*d);
  if (auto i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return quote(std::get<std::string>(cell));
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << quote(table.header[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << render(row[i]);
    out << '\n';
  }
}

void export_csv(const Table& table, const std::filesystem::path& path) {
  require(!table.header.empty() && !table.rows.empty(), "cannot export an empty series");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(table, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace onsager
