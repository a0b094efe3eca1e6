#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace shredder {

/// Shortest-round-trip-safe text for a double: printf "%.17g".
std::string format_real(double x);

/// A numeric table with a fixed column schema. Integers and flags are stored
/// as doubles; "%.17g" prints them without a fractional part.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
};

/// Header + rows, LF line endings. Throws std::invalid_argument on a
/// non-finite value or a row whose width differs from the header.
std::string to_csv(const CsvTable& table);

/// Throws std::runtime_error with the path on I/O failure.
void write_csv(const CsvTable& table, const std::filesystem::path& path);

void write_text(const std::string& text, const std::filesystem::path& path);

} // namespace shredder
