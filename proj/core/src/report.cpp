#include "vlcsync/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"
#include "vlcsync/errors.hpp"

namespace vlcsync {

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(text) + "'");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

Report::Report(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Report::set_meta(const std::string& key, const std::string& value) { meta_[key] = value; }

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw Error(ErrorCode::InvalidArgument, "row width does not match columns");
  rows_.push_back(std::move(row));
}

std::size_t Report::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  throw Error(ErrorCode::InvalidArgument, "no column '" + std::string(name) + "'");
}

const Cell& Report::at(std::size_t row, std::string_view column) const {
  return rows_.at(row).at(column_index(column));
}

double Report::number(std::size_t row, std::string_view column) const {
  const Cell& c = at(row, column);
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  throw Error(ErrorCode::InvalidArgument, "column '" + std::string(column) + "' is not numeric");
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return format_number(std::get<double>(c));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  const double d = std::get<double>(c);
  if (!std::isfinite(d)) return format_number(d);
  return std::strtod(format_number(d).c_str(), nullptr);
}

}  // namespace

std::string Report::to_csv() const {
  std::string out;
  for (const auto& [k, v] : meta_) out += "# " + k + ": " + v + "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + csv_field(columns_[i]);
  out += "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(cell_text(row[i]));
    out += "\n";
  }
  return out;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta_) j["meta"][k] = v;
  j["columns"] = columns_;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[columns_[i]] = cell_json(row[i]);
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

std::string Report::render(ReportFormat format) const {
  return format == ReportFormat::Csv ? to_csv() : to_json();
}

}  // namespace vlcsync
