#pragma once

// Tabular experiment output with free-form metadata, rendered as CSV (with
// "# key: value" header lines) or as a JSON object {meta, columns, rows}.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vlcsync {

using Cell = std::variant<std::string, std::int64_t, double>;

enum class ReportFormat { Csv, Json };

/// Throws InvalidArgument for anything but "csv" or "json".
ReportFormat parse_report_format(std::string_view text);

/// %.6g
std::string format_number(double value);

class Report {
 public:
  explicit Report(std::vector<std::string> columns);

  void set_meta(const std::string& key, const std::string& value);
  void set_meta(const std::string& key, double value) { set_meta(key, format_number(value)); }
  /// Throws InvalidArgument when the row width differs from the column count.
  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  const std::map<std::string, std::string>& meta() const noexcept { return meta_; }

  std::size_t column_index(std::string_view name) const;
  const Cell& at(std::size_t row, std::string_view column) const;
  /// Numeric cell as double; throws InvalidArgument for text cells.
  double number(std::size_t row, std::string_view column) const;

  std::string to_csv() const;
  std::string to_json() const;
  std::string render(ReportFormat format) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::map<std::string, std::string> meta_;
};

}  // namespace vlcsync
