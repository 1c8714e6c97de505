#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rncg::cli {

/// Shortest decimal form that parses back to the same double. Locale-free.
std::string format_double(double v);

/// Fixed number of significant digits, for plot labels.
std::string format_short(double v, int digits = 4);

/// Comma-separated table: one header line, then rows of already formatted cells.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  /// Convenience for all-numeric rows.
  void add_numbers(const std::vector<double>& values);

  std::string str() const;
  std::size_t rows() const noexcept { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace rncg::cli
