#include "shredder/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace shredder {

std::string format_real(double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  return {buf, static_cast<std::size_t>(n)};
}

void CsvTable::add(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("csv: row has " + std::to_string(row.size()) + " fields, schema has " +
                                std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.columns.size())
      throw std::invalid_argument("csv: row " + std::to_string(r) + " does not match the schema");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!std::isfinite(row[i]))
        throw std::invalid_argument("csv: non-finite value in column '" + table.columns[i] + "' at row " +
                                    std::to_string(r));
      if (i) out += ',';
      out += format_real(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  write_text(to_csv(table), path);
}

} // namespace shredder
